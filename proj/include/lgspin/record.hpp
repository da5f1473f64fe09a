#pragma once

#include "lgspin/quantum.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <string>

namespace lgspin {

/// Thrown when an input file does not match the experiment-record schema.
struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The four pairwise joint distributions of a four-time run — pairs (1,2),
/// (2,3), (3,4), (1,4), first index earlier in time — plus the single-time
/// marginals p^+(Q_i). Internal consistency between pairs and singles is
/// deliberately NOT an invariant: testing it is exactly the no-signaling-
/// in-time check.
struct ExperimentRecord {
    PairStatistics p12, p23, p34, p14;
    std::array<double, 4> singles{};  // p^+(Q_1) ... p^+(Q_4)

    void validate() const {
        p12.validate();
        p23.validate();
        p34.validate();
        p14.validate();
        for (double s : singles) {
            if (!(s >= -tol::algebraic) || !(s <= 1.0 + tol::algebraic)) {
                throw std::invalid_argument("ExperimentRecord: single probability " +
                                            std::to_string(s) + " out of [0,1]");
            }
        }
    }

    double single_plus(int which) const { return singles[static_cast<std::size_t>(which - 1)]; }

    double single(int which, int outcome) const {
        const double plus = single_plus(which);
        return outcome == +1 ? plus : 1.0 - plus;
    }
};

/// Record with unbiased marginals reproducing the given correlations:
/// p^{ab} = (1 + a b C)/4 and every single equal to 1/2.
inline ExperimentRecord record_from_correlations(double c12, double c23, double c34,
                                                 double c14) {
    for (double c : {c12, c23, c34, c14}) {
        if (!(std::abs(c) <= 1.0 + tol::algebraic)) {
            throw std::invalid_argument("record_from_correlations: |C| must be <= 1, got " +
                                        std::to_string(c));
        }
    }
    auto pair = [](double c) {
        return PairStatistics{(1.0 + c) / 4.0, (1.0 - c) / 4.0, (1.0 - c) / 4.0,
                              (1.0 + c) / 4.0};
    };
    ExperimentRecord rec{pair(c12), pair(c23), pair(c34), pair(c14), {0.5, 0.5, 0.5, 0.5}};
    rec.validate();
    return rec;
}

/// Record assembled from measured pair statistics; singles are read off the
/// pair that measures each time slot first (Q4 only appears second).
inline ExperimentRecord record_from_pairs(const PairStatistics& p12, const PairStatistics& p23,
                                          const PairStatistics& p34,
                                          const PairStatistics& p14) {
    ExperimentRecord rec{p12,
                         p23,
                         p34,
                         p14,
                         {p12.marginal_plus(0), p23.marginal_plus(0), p34.marginal_plus(0),
                          p14.marginal_plus(1)}};
    rec.validate();
    return rec;
}

namespace detail {

inline double require_probability(const nlohmann::json& node, const std::string& path) {
    if (!node.is_number()) {
        throw schema_error(path + ": expected a number");
    }
    const double value = node.get<double>();
    if (!(value >= -tol::algebraic) || !(value <= 1.0 + tol::algebraic)) {
        throw schema_error(path + ": probability " + std::to_string(value) +
                           " out of [0,1]");
    }
    return value;
}

inline PairStatistics pair_from_json(const nlohmann::json& root, const std::string& key) {
    if (!root.contains(key) || !root.at(key).is_object()) {
        throw schema_error("pairs." + key + ": missing object");
    }
    const nlohmann::json& node = root.at(key);
    auto field = [&](const char* name) {
        if (!node.contains(name)) {
            throw schema_error("pairs." + key + "." + name + ": missing");
        }
        return require_probability(node.at(name), "pairs." + key + "." + name);
    };
    PairStatistics stats;
    stats.p_pp = field("pp");
    stats.p_pm = field("pm");
    stats.p_mp = field("mp");
    stats.p_mm = field("mm");
    const double sum = stats.p_pp + stats.p_pm + stats.p_mp + stats.p_mm;
    if (std::abs(sum - 1.0) > tol::structural) {
        throw schema_error("pairs." + key + ": probabilities sum to " + std::to_string(sum) +
                           ", expected 1");
    }
    return stats;
}

}  // namespace detail

inline ExperimentRecord record_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("pairs") || !j.at("pairs").is_object()) {
        throw schema_error("pairs: missing object");
    }
    if (!j.contains("singles") || !j.at("singles").is_object()) {
        throw schema_error("singles: missing object");
    }
    ExperimentRecord rec;
    rec.p12 = detail::pair_from_json(j.at("pairs"), "12");
    rec.p23 = detail::pair_from_json(j.at("pairs"), "23");
    rec.p34 = detail::pair_from_json(j.at("pairs"), "34");
    rec.p14 = detail::pair_from_json(j.at("pairs"), "14");
    for (int i = 1; i <= 4; ++i) {
        const std::string key = std::to_string(i);
        if (!j.at("singles").contains(key)) {
            throw schema_error("singles." + key + ": missing");
        }
        rec.singles[static_cast<std::size_t>(i - 1)] =
            detail::require_probability(j.at("singles").at(key), "singles." + key);
    }
    rec.validate();
    return rec;
}

inline nlohmann::json record_to_json(const ExperimentRecord& rec) {
    auto pair = [](const PairStatistics& p) {
        return nlohmann::json{{"pp", p.p_pp}, {"pm", p.p_pm}, {"mp", p.p_mp}, {"mm", p.p_mm}};
    };
    return nlohmann::json{
        {"pairs",
         {{"12", pair(rec.p12)}, {"23", pair(rec.p23)}, {"34", pair(rec.p34)},
          {"14", pair(rec.p14)}}},
        {"singles",
         {{"1", rec.singles[0]}, {"2", rec.singles[1]}, {"3", rec.singles[2]},
          {"4", rec.singles[3]}}}};
}

inline ExperimentRecord read_record_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open record file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error(std::string("invalid JSON: ") + e.what());
    }
    return record_from_json(j);
}

}  // namespace lgspin
