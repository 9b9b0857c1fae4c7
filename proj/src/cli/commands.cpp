#include "cli/commands.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "hw2f/csv.hpp"
#include "hw2f/errors.hpp"
#include "hw2f/exposure.hpp"
#include "hw2f/monte_carlo.hpp"
#include "hw2f/swap_analytics.hpp"

namespace hw2f::cli {
namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    unsigned threads = 0;
};

struct Context {
    const Options& opts;
    std::ostream& out;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
    f << content;
    f.flush();
    if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
}

void require_out(const Options& o) {
    if (o.out.empty()) throw ConfigError("--out is required for this subcommand");
}

McConfig mc_config(Section& exp, const Options& o) {
    McConfig c;
    if (exp.has("paths")) c.n_paths = exp.unsigned_integer("paths");
    if (exp.has("seed")) c.seed = exp.unsigned_integer("seed");
    if (o.paths) c.n_paths = *o.paths;
    if (o.seed) c.seed = *o.seed;
    c.threads = o.threads;
    return c;
}

// Co-initial pair used by the correlation subcommands.
struct SwapPair {
    double observation;
    SwapSpec short_swap;
    SwapSpec long_swap;
};

SwapPair swap_pair(Section& exp) {
    const double tn = exp.number("observation");
    const double delta = exp.number("delta");
    SwapPair p{tn, {tn, exp.number("short_end"), delta}, {tn, exp.number("long_end"), delta}};
    p.short_swap.validate();
    p.long_swap.validate();
    if (!(p.short_swap.end < p.long_swap.end))
        throw ConfigError("experiment.short_end must be before experiment.long_end");
    return p;
}

int cmd_region(const RunConfig& rc, Context ctx) {
    Section exp(rc.experiment, "experiment");
    const double tn = exp.number("observation");
    const double short_end = exp.number("short_end");
    const double long_end = exp.number("long_end");
    exp.finish();
    const auto params = rc.model.params(long_end);
    const auto r = classify_region(params, tn, short_end, long_end);

    ctx.out << "region: " << to_string(r.region) << '\n'
            << "ratio_vol: " << format_number(r.ratio_vol) << '\n'
            << "ratio_short: " << format_number(r.ratio_short) << '\n'
            << "ratio_long: " << format_number(r.ratio_long) << '\n'
            << "limit_sign: " << to_string(r.limit_sign) << '\n';
    if (!ctx.opts.out.empty()) {
        std::ostringstream csv;
        csv << "ratio_vol,ratio_short,ratio_long,region,limit_sign\n"
            << format_number(r.ratio_vol) << ',' << format_number(r.ratio_short) << ','
            << format_number(r.ratio_long) << ',' << to_string(r.region) << ','
            << to_string(r.limit_sign) << '\n';
        write_file(ctx.opts.out, csv.str());
    }
    return kSuccess;
}

int cmd_corr_curve(const RunConfig& rc, Context ctx) {
    require_out(ctx.opts);
    Section exp(rc.experiment, "experiment");
    const auto pair = swap_pair(exp);
    const auto grid = exp.grid("rho_grid");
    exp.finish();
    const auto params = rc.model.params(pair.long_swap.end);
    const auto curve = correlation_curve(params, pair.observation, pair.short_swap,
                                         pair.long_swap, rc.curve, grid);
    std::ostringstream csv;
    csv << "rho_m,rho_swap\n";
    for (const auto& p : curve) csv << format_number(p.rho_m) << ',' << format_number(p.rho_swap) << '\n';
    write_file(ctx.opts.out, csv.str());
    return kSuccess;
}

int cmd_scatter(const RunConfig& rc, Context ctx) {
    require_out(ctx.opts);
    Section exp(rc.experiment, "experiment");
    const auto pair = swap_pair(exp);
    const auto rho = exp.optional_number("rho_m");
    const auto mc = mc_config(exp, ctx.opts);
    exp.finish();
    auto params = rc.model.params(pair.long_swap.end);
    if (rho) params = with_terminal_rho(params, pair.observation, *rho);
    const auto result = simulate_swap_pair(rc.curve, params, pair.short_swap, pair.long_swap, mc);
    std::ostringstream csv;
    write_scatter_csv(result, csv);
    write_file(ctx.opts.out, csv.str());
    ctx.out << "rho_swap: " << format_number(result.correlation) << " (stderr "
            << format_number(result.std_error) << ")\n";
    return kSuccess;
}

int cmd_maturity_sweep(const RunConfig& rc, Context ctx) {
    require_out(ctx.opts);
    Section exp(rc.experiment, "experiment");
    const double tn = exp.number("observation");
    SwapSpec short_swap{tn, exp.number("short_end"), exp.number("delta")};
    short_swap.validate();
    const auto ends = exp.grid("long_ends");
    const auto rho = exp.optional_number("rho_m");
    exp.finish();
    auto params = rc.model.params(*std::max_element(ends.begin(), ends.end()));
    if (rho) params = with_terminal_rho(params, tn, *rho);
    const auto sweep = maturity_sweep(params, tn, short_swap, ends, rc.curve);
    std::ostringstream csv;
    csv << "t_long,rho_swap,region\n";
    for (const auto& p : sweep)
        csv << format_number(p.long_end) << ',' << format_number(p.rho_swap) << ','
            << to_string(p.region) << '\n';
    write_file(ctx.opts.out, csv.str());
    return kSuccess;
}

int cmd_exposure(const RunConfig& rc, Context ctx) {
    require_out(ctx.opts);
    Section exp(rc.experiment, "experiment");
    const double tn = exp.number("observation");
    NettingSet set;
    const auto& swaps = exp.raw("swaps");
    if (!swaps.is_array()) throw ConfigError("experiment.swaps: expected an array");
    for (std::size_t i = 0; i < swaps.size(); ++i)
        set.swaps.push_back(parse_swap(Section(swaps[i], "experiment.swaps[" + std::to_string(i) + "]"), rc.curve));
    set.validate();
    const auto grid = exp.grid("rho_grid");
    const auto mc = mc_config(exp, ctx.opts);

    ExposureSweepOptions options;
    if (exp.has("calibration")) {
        Section cal = exp.object("calibration");
        const double start = cal.optional_number("start").value_or(tn);
        SwapSpec instrument{start, cal.number("end"), cal.number("delta")};
        instrument.validate();
        options.calibration = LevelTarget{instrument, cal.number("normal_vol")};
        options.recalibrate_each_point = cal.boolean("recalibrate_each_point", true);
        cal.finish();
    }
    std::optional<Section> cva;
    if (exp.has("cva")) cva.emplace(exp.object("cva"));
    exp.finish();

    double longest = 0.0;
    for (const auto& s : set.swaps) longest = std::max(longest, s.end);
    const auto params = rc.model.params(longest);

    const auto points = exposure_vs_rho_curve(rc.curve, params, set, tn, grid, mc, options);
    std::ostringstream csv;
    write_exposure_csv(points, csv);
    write_file(ctx.opts.out, csv.str());

    if (cva) {
        const double hazard = cva->number("hazard_rate");
        const double lgd = cva->optional_number("lgd").value_or(1.0);
        const auto times = cva->grid("times");
        cva->finish();
        auto base = params;
        if (options.calibration)
            base = calibrate_level(base, options.calibration->instrument.start,
                                   options.calibration->instrument, rc.curve,
                                   options.calibration->normal_vol)
                       .params;
        const auto profile = exposure_profile(rc.curve, base, set, times, mc);
        ctx.out << "cva: " << format_number(cva_flat_hazard(profile, hazard, lgd)) << '\n';
    }
    return kSuccess;
}

int cmd_calibrate(const RunConfig& rc, Context ctx) {
    Section exp(rc.experiment, "experiment");
    const double tn = exp.number("observation");
    std::optional<Section> rho_sec, level_sec;
    if (exp.has("rho")) rho_sec.emplace(exp.object("rho"));
    if (exp.has("level")) level_sec.emplace(exp.object("level"));
    exp.finish();
    if (!rho_sec && !level_sec) throw ConfigError("experiment: nothing to calibrate (give rho and/or level)");

    double longest = tn;
    std::optional<std::pair<SwapSpec, SwapSpec>> rho_pair;
    double rho_target = 0.0;
    if (rho_sec) {
        const double delta = rho_sec->number("delta");
        rho_pair.emplace(SwapSpec{tn, rho_sec->number("short_end"), delta},
                         SwapSpec{tn, rho_sec->number("long_end"), delta});
        rho_target = rho_sec->number("target");
        rho_sec->finish();
        rho_pair->first.validate();
        rho_pair->second.validate();
        longest = std::max(longest, rho_pair->second.end);
    }
    std::optional<SwapSpec> level_swap;
    double level_target = 0.0;
    if (level_sec) {
        level_swap.emplace(SwapSpec{tn, level_sec->number("end"), level_sec->number("delta")});
        level_target = level_sec->number("normal_vol");
        level_sec->finish();
        level_swap->validate();
        longest = std::max(longest, level_swap->end);
    }

    auto params = rc.model.params(longest);
    std::ostringstream summary;
    if (rho_pair) {
        const auto r = calibrate_rho(params, tn, rho_pair->first, rho_pair->second, rc.curve, rho_target);
        params = with_terminal_rho(params, tn, r.rho_m);
        summary << "rho_m: " << format_number(r.rho_m) << " (rho_swap "
                << format_number(r.achieved) << ", roots " << r.multiplicity << ")\n";
    }
    if (level_swap) {
        const auto l = calibrate_level(params, tn, *level_swap, rc.curve, level_target);
        params = l.params;
        summary << "variance scale: " << format_number(l.scale) << " (normal vol "
                << format_number(implied_normal_vol(params, tn, *level_swap, rc.curve)) << ")\n";
    }

    json doc = rc.document;
    doc["model"] = model_to_json(params);
    const std::string text = doc.dump(2) + "\n";
    if (!ctx.opts.out.empty()) write_file(ctx.opts.out, text);
    ctx.out << summary.str() << text;
    return kSuccess;
}

using Command = std::function<int(const RunConfig&, Context)>;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-factor Hull-White swap-rate correlation and exposure analytics", "hw2f"};
    app.require_subcommand(1);
    Options opts;

    const std::vector<std::pair<std::string, std::pair<std::string, Command>>> table = {
        {"region", {"Classify the parameters into region I/II/III", cmd_region}},
        {"corr-curve", {"Swap-rate correlation across terminal factor correlations", cmd_corr_curve}},
        {"scatter", {"Monte-Carlo scatter of two co-initial swap rates", cmd_scatter}},
        {"maturity-sweep", {"Correlation against the long swap's end date", cmd_maturity_sweep}},
        {"exposure", {"Netting-set EPE across terminal factor correlations", cmd_exposure}},
        {"calibrate", {"Calibrate terminal correlation and/or variance level", cmd_calibrate}},
    };
    for (const auto& [name, entry] : table) {
        auto* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--config", opts.config, "JSON config file")->required();
        sub->add_option("--out", opts.out, "output file");
        sub->add_option("--seed", opts.seed, "Monte-Carlo seed (overrides config)");
        sub->add_option("--paths", opts.paths, "Monte-Carlo path count (overrides config)");
        sub->add_option("--threads", opts.threads, "worker threads, 0 = all cores");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "hw2f: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        for (const auto& [name, entry] : table) {
            if (app.got_subcommand(name)) {
                const auto rc = load_config(opts.config);
                return entry.second(rc, Context{opts, out});
            }
        }
    } catch (const ConfigError& e) {
        err << "hw2f: invalid configuration: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "hw2f: invalid input: " << e.what() << '\n';
        return kConfigError;
    } catch (const UnattainableTarget& e) {
        err << "hw2f: " << e.what() << '\n';
        return kNumericalError;
    } catch (const DegenerateError& e) {
        err << "hw2f: numerical degeneracy: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "hw2f: " << e.what() << '\n';
        return kFailure;
    }
    return kConfigError;
}

}  // namespace hw2f::cli
