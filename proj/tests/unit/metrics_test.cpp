#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "chainscore/metrics.hpp"
#include "chainscore/util/rng.hpp"

using namespace chainscore;

TEST_CASE("rank auc reproduces the four-point hand example") {
    const auto [auc, defined] = rank_auc({0.9, 0.8, 0.4, 0.1}, {1, 0, 1, 0});
    CHECK(defined);
    CHECK(auc == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("rank auc extremes") {
    CHECK(rank_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}).first == doctest::Approx(1.0));
    CHECK(rank_auc({0.1, 0.2, 0.8, 0.9}, {1, 1, 0, 0}).first == doctest::Approx(0.0));
    // Constant scores tie everything; midranks give exactly one half.
    CHECK(rank_auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}).first == doctest::Approx(0.5));
}

TEST_CASE("rank auc is undefined for a single class") {
    CHECK_FALSE(rank_auc({0.2, 0.4}, {0, 0}).second);
    CHECK_FALSE(rank_auc({0.2, 0.4}, {1, 1}).second);
}

TEST_CASE("rank auc is invariant under strictly increasing transforms") {
    Rng rng(31);
    std::vector<double> scores, labels;
    for (int i = 0; i < 200; ++i) {
        scores.push_back(rng.real());
        labels.push_back(rng.real() < 0.3 ? 1.0 : 0.0);
    }
    // Duplicate a few scores to exercise the midrank path.
    for (int i = 0; i < 20; ++i) scores[static_cast<std::size_t>(i) + 100] = scores[i];

    const double base = rank_auc(scores, labels).first;
    std::vector<double> warped = scores;
    for (double& s : warped) s = std::tanh(3.0 * s) + 2.0;
    CHECK(rank_auc(warped, labels).first == doctest::Approx(base).epsilon(1e-15));
    for (double& s : warped) s = std::exp(s);
    CHECK(rank_auc(warped, labels).first == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("rmse and mae hand cases") {
    CHECK(rmse({3, -3}, {0, 0}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(mae({3, -3}, {0, 0}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(rmse({6, 0}, {0, 0}) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-15));
    CHECK(rmse({6, 0}, {0, 0}) == doctest::Approx(4.242640687119285).epsilon(1e-12));
    CHECK(mae({6, 0}, {0, 0}) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(rmse({1, 2}, {1, 2}) == 0.0);
}

TEST_CASE("rmse dominates mae on every vector") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> pred, actual;
        const int n = 1 + static_cast<int>(rng.uniform(40));
        for (int i = 0; i < n; ++i) {
            pred.push_back(rng.normal() * 5);
            actual.push_back(rng.normal() * 5);
        }
        CHECK(rmse(pred, actual) >= mae(pred, actual) - 1e-12);
    }
}

TEST_CASE("classification report weighted metrics match hand counts") {
    // y = [1,1,1,0,0], p = [0.9,0.6,0.2,0.7,0.1] at threshold 0.5:
    // class 1: tp=2 fn=1 fp=1 -> P=R=F1=2/3; class 0: 1 of 2 right -> 1/2.
    const ClassificationReport rep =
        classification_report({0.9, 0.6, 0.2, 0.7, 0.1}, {1, 1, 1, 0, 0});
    CHECK(rep.n == 5);
    CHECK(rep.prevalence == doctest::Approx(0.6));
    CHECK(rep.confusion.tp == 2);
    CHECK(rep.confusion.fn == 1);
    CHECK(rep.confusion.fp == 1);
    CHECK(rep.confusion.tn == 1);
    CHECK(rep.precision_weighted == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(rep.recall_weighted == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(rep.f1_weighted == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(rep.auc_defined);
    CHECK(rep.auc == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("perfect classifier scores one across the board") {
    const ClassificationReport rep = classification_report({0.9, 0.8, 0.1, 0.2}, {1, 1, 0, 0});
    CHECK(rep.f1_weighted == doctest::Approx(1.0));
    CHECK(rep.precision_weighted == doctest::Approx(1.0));
    CHECK(rep.recall_weighted == doctest::Approx(1.0));
    CHECK(rep.auc == doctest::Approx(1.0));
}

TEST_CASE("pr curve thresholds are strictly increasing and recall is non-increasing") {
    Rng rng(23);
    std::vector<double> scores, labels;
    for (int i = 0; i < 300; ++i) {
        scores.push_back(rng.uniform(10) / 10.0);  // plenty of ties
        labels.push_back(rng.real() < 0.25 ? 1.0 : 0.0);
    }
    const ClassificationReport rep = classification_report(scores, labels);
    REQUIRE(!rep.pr_curve.empty());
    for (std::size_t i = 1; i < rep.pr_curve.size(); ++i) {
        CHECK(rep.pr_curve[i].threshold > rep.pr_curve[i - 1].threshold);
        CHECK(rep.pr_curve[i].recall <= rep.pr_curve[i - 1].recall);
    }
    // The lowest threshold predicts everything positive: recall 1, precision = prevalence.
    CHECK(rep.pr_curve.front().recall == doctest::Approx(1.0));
    CHECK(rep.pr_curve.front().precision == doctest::Approx(rep.prevalence));
}

TEST_CASE("pr curve of the hand example") {
    const ClassificationReport rep =
        classification_report({0.9, 0.8, 0.4, 0.1}, {1, 0, 1, 0});
    REQUIRE(rep.pr_curve.size() == 4);
    CHECK(rep.pr_curve[3].threshold == doctest::Approx(0.9));
    CHECK(rep.pr_curve[3].precision == doctest::Approx(1.0));
    CHECK(rep.pr_curve[3].recall == doctest::Approx(0.5));
    CHECK(rep.pr_curve[1].threshold == doctest::Approx(0.4));
    CHECK(rep.pr_curve[1].precision == doctest::Approx(2.0 / 3.0));
    CHECK(rep.pr_curve[1].recall == doctest::Approx(1.0));
}

TEST_CASE("pr curve csv has the documented header") {
    const std::string csv = pr_curve_csv({{0.5, 0.75, 1.0}});
    CHECK(csv.substr(0, 27) == "threshold,precision,recall\n");
    CHECK(csv.find("0.5") != std::string::npos);
}

TEST_CASE("metric functions reject degenerate input") {
    CHECK_THROWS_AS(classification_report({}, {}), std::runtime_error);
    CHECK_THROWS_AS(classification_report({0.5}, {1, 0}), std::runtime_error);
    CHECK_THROWS_AS(rmse({}, {}), std::runtime_error);
    CHECK_THROWS_AS(mae({1.0}, {}), std::runtime_error);
}
