#include "cli/config.hpp"

#include <cmath>
#include <fstream>

#include "hw2f/errors.hpp"
#include "hw2f/swap_analytics.hpp"

namespace hw2f::cli {

Section::Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
}

bool Section::has(const std::string& key) const {
    return j_.contains(key);
}

const json& Section::at(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(path_ + "." + key + ": missing");
    used_.insert(key);
    return j_.at(key);
}

double Section::number(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number()) throw ConfigError(path_ + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path_ + "." + key + ": not finite");
    return d;
}

std::optional<double> Section::optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
}

bool Section::boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (!v.is_boolean()) throw ConfigError(path_ + "." + key + ": expected true or false");
    return v.get<bool>();
}

std::string Section::string(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_string()) throw ConfigError(path_ + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::uint64_t Section::unsigned_integer(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number_unsigned()) throw ConfigError(path_ + "." + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

const json& Section::raw(const std::string& key) {
    return at(key);
}

Section Section::object(const std::string& key) {
    return Section(at(key), path_ + "." + key);
}

std::vector<double> Section::grid(const std::string& key) {
    const auto& v = at(key);
    const std::string where = path_ + "." + key;
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(where + ": grid entries must be numbers");
            out.push_back(e.get<double>());
        }
        if (out.empty()) throw ConfigError(where + ": grid is empty");
        return out;
    }
    Section g(v, where);
    const double from = g.number("from");
    const double to = g.number("to");
    const auto points = g.unsigned_integer("points");
    g.finish();
    if (points < 2 || points > 100000) throw ConfigError(where + ".points: must be in [2, 100000]");
    return linear_grid(from, to, static_cast<int>(points));
}

void Section::finish() const {
    for (const auto& [key, value] : j_.items())
        if (!used_.count(key)) throw ConfigError(path_ + "." + key + ": unknown key");
}

Hw2fParams ModelConfig::params(double default_numeraire) const {
    return Hw2fParams(a1, a2, vol, numeraire_maturity.value_or(default_numeraire));
}

DiscountCurve parse_curve(Section s) {
    DiscountCurve curve = [&] {
        if (s.has("flat_rate")) {
            if (s.has("pillars")) throw ConfigError(s.path() + ": give flat_rate or pillars, not both");
            return DiscountCurve::flat(s.number("flat_rate"));
        }
        const auto& arr = s.raw("pillars");
        if (!arr.is_array()) throw ConfigError(s.path() + ".pillars: expected [[time, df], ...]");
        std::vector<Pillar> pillars;
        for (const auto& p : arr) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw ConfigError(s.path() + ".pillars: each pillar is [time, df]");
            pillars.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        return DiscountCurve::from_pillars(std::move(pillars), s.boolean("non_negative_rates", false));
    }();
    s.finish();
    return curve;
}

ModelConfig parse_model(Section s) {
    ModelConfig m{s.number("a1"), s.number("a2"), ConstantSigma{}, s.optional_number("numeraire_maturity")};
    Section v = s.object("vol");
    const std::string type = v.string("type");
    if (type == "constant_sigma") {
        m.vol = ConstantSigma{v.number("sigma1"), v.number("sigma2"), v.number("rho12")};
    } else if (type == "terminal_covariance") {
        m.vol = TerminalCovariance{v.number("horizon"), v.number("xi1"), v.number("xi2"),
                                   v.number("rho_m")};
    } else {
        throw ConfigError(v.path() + ".type: expected constant_sigma or terminal_covariance");
    }
    v.finish();
    s.finish();
    // Construct once so that a1 <= a2 and friends fail at load time.
    (void)m.params(m.numeraire_maturity.value_or(1.0));
    return m;
}

json model_to_json(const Hw2fParams& params) {
    json vol;
    if (const auto* cs = std::get_if<ConstantSigma>(&params.vol())) {
        vol = {{"type", "constant_sigma"},
               {"sigma1", cs->sigma1},
               {"sigma2", cs->sigma2},
               {"rho12", cs->rho12}};
    } else {
        const auto& tc = std::get<TerminalCovariance>(params.vol());
        vol = {{"type", "terminal_covariance"},
               {"horizon", tc.horizon},
               {"xi1", tc.xi1},
               {"xi2", tc.xi2},
               {"rho_m", tc.rho_m}};
    }
    return {{"a1", params.a1()},
            {"a2", params.a2()},
            {"numeraire_maturity", params.numeraire_maturity()},
            {"vol", vol}};
}

SwapSpec parse_swap(Section s, const DiscountCurve& curve) {
    SwapSpec spec{s.number("start"), s.number("end"), s.number("delta")};
    const std::string dir = s.string("direction");
    if (dir == "payer") spec.direction = Direction::payer;
    else if (dir == "receiver") spec.direction = Direction::receiver;
    else throw ConfigError(s.path() + ".direction: expected payer or receiver");
    spec.notional = s.number("notional");
    spec.validate();
    const auto& k = s.raw("strike");
    if (k.is_string() && k.get<std::string>() == "atm") {
        spec.strike = par_rate(curve, spec);
    } else if (k.is_number()) {
        spec.strike = k.get<double>();
    } else {
        throw ConfigError(s.path() + ".strike: expected a number or \"atm\"");
    }
    s.finish();
    return spec;
}

RunConfig parse_config(const json& document) {
    Section root(document, "config");
    RunConfig rc{document, parse_curve(root.object("curve")), parse_model(root.object("model")),
                 root.has("experiment") ? root.raw("experiment") : json::object()};
    root.finish();
    return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

}  // namespace hw2f::cli
