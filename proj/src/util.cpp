#include "chainscore/util/csv.hpp"
#include "chainscore/util/dates.hpp"
#include "chainscore/util/hash.hpp"
#include "chainscore/util/io.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace chainscore {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- hashing

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

std::string hash_file(const std::string& path) {
    return hex64(fnv1a(read_file(path)));
}

// ------------------------------------------------------------------ dates

namespace {

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return table[m - 1];
}

}  // namespace

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return std::string(buf);
}

std::int64_t Date::serial() const { return days_from_civil(year, month, day); }

bool parse_date(const std::string& text, Date& out) {
    // Fixed ISO calendar shape YYYY-MM-DD; market-value exports sometimes
    // carry a time suffix (" 00:00:00" or "T..."), which is ignored.
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return false;
    for (const int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    if (text.size() > 10 && text[10] != ' ' && text[10] != 'T') return false;
    const int y = std::stoi(text.substr(0, 4));
    const int m = std::stoi(text.substr(5, 2));
    const int d = std::stoi(text.substr(8, 2));
    Date candidate{y, m, d};
    if (!candidate.valid()) return false;
    out = candidate;
    return true;
}

int whole_months_between(const Date& a, const Date& b) {
    int months = (b.year - a.year) * 12 + (b.month - a.month);
    if (b.day < a.day) months -= 1;
    return months;
}

int whole_years_between(const Date& born, const Date& at) {
    int years = at.year - born.year;
    if (at.month < born.month || (at.month == born.month && at.day < born.day)) years -= 1;
    return years;
}

// -------------------------------------------------------------------- csv

const std::string& CsvTable::cell(std::size_t row, const std::string& column) const {
    const auto it = column_index.find(column);
    if (it == column_index.end()) throw std::runtime_error("csv: no column named '" + column + "'");
    return rows.at(row).at(it->second);
}

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool any = false;

    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    const auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallow; \r\n handled at \n
        } else if (c == '\n') {
            end_record();
        } else {
            field.push_back(c);
        }
    }
    if (any && (!field.empty() || !record.empty())) end_record();

    CsvTable table;
    if (records.empty()) return table;
    table.header = records.front();
    for (std::size_t c = 0; c < table.header.size(); ++c) table.column_index[table.header[c]] = c;
    for (std::size_t r = 1; r < records.size(); ++r) {
        auto& row = records[r];
        row.resize(table.header.size());
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_file(path)); }

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

// --------------------------------------------------------------------- io

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write: " + path);
}

bool file_exists(const std::string& path) { return fs::exists(path); }

void ensure_dir(const std::string& path) { fs::create_directories(path); }

std::string path_join(const std::string& a, const std::string& b) {
    return (fs::path(a) / b).string();
}

nlohmann::json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + " at byte " +
                                 std::to_string(e.byte) + ": " + e.what());
    }
}

void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& records) {
    std::string out;
    for (const auto& rec : records) {
        out += rec.dump();
        out += '\n';
    }
    write_file(path, out);
}

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<nlohmann::json> records;
    std::size_t start = 0;
    std::size_t line_no = 1;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) {
            try {
                records.push_back(nlohmann::json::parse(text.substr(start, end - start)));
            } catch (const nlohmann::json::parse_error& e) {
                throw std::runtime_error("malformed JSONL in " + path + " line " +
                                         std::to_string(line_no) + ": " + e.what());
            }
        }
        start = end + 1;
        ++line_no;
    }
    return records;
}

void write_json_file(const std::string& path, const nlohmann::json& value) {
    write_file(path, value.dump(2) + "\n");
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(std::max(jobs, 1), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_index = n;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (i < err_index) {
                        err_index = i;
                        err = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace chainscore
