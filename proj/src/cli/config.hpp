#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hw2f/curve.hpp"
#include "hw2f/model.hpp"
#include "hw2f/swap.hpp"

namespace hw2f::cli {

using json = nlohmann::json;

/// Read access to one JSON object that remembers which keys were used;
/// finish() rejects anything left over.
class Section {
public:
    Section(const json& j, std::string path);

    bool has(const std::string& key) const;
    double number(const std::string& key);
    std::optional<double> optional_number(const std::string& key);
    bool boolean(const std::string& key, bool fallback);
    std::string string(const std::string& key);
    std::uint64_t unsigned_integer(const std::string& key);
    const json& raw(const std::string& key);
    Section object(const std::string& key);

    /// Either an explicit array of numbers or {"from", "to", "points"}.
    std::vector<double> grid(const std::string& key);

    void finish() const;
    const std::string& path() const { return path_; }

private:
    const json& at(const std::string& key);

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

struct ModelConfig {
    double a1;
    double a2;
    VolSpec vol;
    std::optional<double> numeraire_maturity;

    /// Falls back to `default_numeraire` (the longest cashflow date of the
    /// experiment) when the config does not fix S.
    Hw2fParams params(double default_numeraire) const;
};

struct RunConfig {
    json document;
    DiscountCurve curve;
    ModelConfig model;
    json experiment;
};

/// Parses and validates the curve and model sections; the experiment
/// section is validated by the subcommand that consumes it.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const json& document);

DiscountCurve parse_curve(Section s);
ModelConfig parse_model(Section s);

/// JSON form of a model section, as accepted by parse_model.
json model_to_json(const Hw2fParams& params);

/// One swap of a netting set. "strike" is a number or "atm" (time-0
/// forward par rate of that swap).
SwapSpec parse_swap(Section s, const DiscountCurve& curve);

}  // namespace hw2f::cli
