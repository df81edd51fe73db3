#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainscore {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

bool file_exists(const std::string& path);
void ensure_dir(const std::string& path);
std::string path_join(const std::string& a, const std::string& b);

// Parses a whole file as JSON; on failure throws std::runtime_error naming
// the file and the byte offset reported by the parser.
nlohmann::json parse_json_file(const std::string& path);

// JSON Lines: one compact object per line, keys in sorted order (nlohmann
// default), doubles in shortest round-trip form. Re-serializing the same
// values is byte-identical.
void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& records);
std::vector<nlohmann::json> read_jsonl(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::json& value);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are
// captured and the first one (lowest i) is rethrown after all workers join.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace chainscore
