#ifndef ORBITENT_CLI_APP_HPP
#define ORBITENT_CLI_APP_HPP

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitent/bistoch.hpp"
#include "orbitent/matrix_io.hpp"
#include "orbitent/oracle.hpp"
#include "orbitent/orbit.hpp"
#include "orbitent/version.hpp"

namespace orbitent::cli {

// Exit-code contract, frozen: 0 ok, 2 parse error, 3 not positive definite,
// 4 target out of interval, 5 containment violation, 1 anything else.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNotPd = 3;
inline constexpr int kExitTarget = 4;
inline constexpr int kExitViolation = 5;

inline constexpr double kSynthVerifyTol = 1e-8;

struct CommandFailure {
    int code;
    std::string message;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("ORBIT_ENTROPY_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw ParseError(std::string("ORBIT_ENTROPY_SEED is not an integer: ") + env);
        return v;
    }
    return 42;
}

// Key/value record rendered as greppable `key: value` lines or, with --json,
// as a single JSON object. Insertion order is kept for the text form.
class Record {
public:
    void add(const std::string& key, const std::string& value) {
        lines_.push_back(key + ": " + value);
        json_[key] = value;
    }
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, double value) {
        lines_.push_back(key + ": " + fmt(value));
        json_[key] = value;
    }
    void add(const std::string& key, std::size_t value) {
        lines_.push_back(key + ": " + std::to_string(value));
        json_[key] = value;
    }
    void add_steps(const std::vector<SynthesisStep>& steps) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : steps) {
            lines_.push_back("step: (" + std::to_string(s.a) + "," + std::to_string(s.b) + "," +
                             fmt(s.k) + ")");
            arr.push_back({s.a, s.b, s.k});
        }
        json_["steps"] = std::move(arr);
    }

    void print(std::ostream& out, bool as_json) const {
        if (as_json) {
            out << json_.dump(2) << '\n';
        } else {
            for (const auto& line : lines_) out << line << '\n';
        }
    }

private:
    std::vector<std::string> lines_;
    nlohmann::json json_ = nlohmann::json::object();
};

inline void add_header(Record& rec, const std::string& rho_path, const std::string& sigma_path) {
    rec.add("tool", std::string(kToolName) + " " + kToolVersion);
    rec.add("generated_at", timestamp_utc());
    rec.add("rho", rho_path);
    rec.add("rho_digest", file_digest(rho_path));
    rec.add("sigma", sigma_path);
    rec.add("sigma_digest", file_digest(sigma_path));
}

}  // namespace detail

struct CommonArgs {
    std::string rho_path;
    std::string sigma_path;
    bool json = false;
};

inline void cmd_bounds(const CommonArgs& common, const std::string& emit_dir, bool nats,
                       std::ostream& out) {
    const HermitianMatrix rho = read_hermitian_file(common.rho_path);
    const HermitianMatrix sigma = read_hermitian_file(common.sigma_path);
    const EntropyInterval interval = orbit_relent_bounds(rho, sigma);
    const auto [overlap_lo, overlap_hi] = trace_overlap_range(rho, sigma);
    const double factor = nats ? 1.0 / kLog2E : 1.0;

    detail::Record rec;
    detail::add_header(rec, common.rho_path, common.sigma_path);
    rec.add("base", nats ? "nats" : "bits");
    rec.add("tolerance", kIntervalTol);
    rec.add("s_min", interval.s_min * factor);
    rec.add("s_max", interval.s_max * factor);
    rec.add("f_min", interval.f_min * factor);
    rec.add("f_max", interval.f_max * factor);
    rec.add("trace_overlap_lo", overlap_lo);
    rec.add("trace_overlap_hi", overlap_hi);

    if (!emit_dir.empty()) {
        std::filesystem::create_directories(emit_dir);
        const std::string u_min_path = (std::filesystem::path(emit_dir) / "u_min.json").string();
        const std::string u_max_path = (std::filesystem::path(emit_dir) / "u_max.json").string();
        write_matrix_file(u_min_path, interval.u_min.mat());
        write_matrix_file(u_max_path, interval.u_max.mat());
        rec.add("u_min_file", u_min_path);
        rec.add("u_max_file", u_max_path);
    }
    rec.print(out, common.json);
}

inline void cmd_synth(const CommonArgs& common, double target, const std::string& out_path,
                      std::ostream& out) {
    const HermitianMatrix rho = read_hermitian_file(common.rho_path);
    const HermitianMatrix sigma = read_hermitian_file(common.sigma_path);
    auto [unitary, plan] = synthesize_target(rho, sigma, target);

    // re-verify through the full matrix path before claiming success
    const double achieved = relative_entropy(conjugate(unitary, rho), sigma).bits;
    const double abs_error = std::abs(achieved - target);
    if (abs_error > kSynthVerifyTol)
        throw CommandFailure{kExitViolation,
                             "synthesized unitary missed the target by " + detail::fmt(abs_error)};
    write_matrix_file(out_path, unitary.mat());

    const EntropyInterval interval = orbit_relent_bounds(rho, sigma);
    detail::Record rec;
    detail::add_header(rec, common.rho_path, common.sigma_path);
    rec.add("target", target);
    rec.add("s_min", interval.s_min);
    rec.add("s_max", interval.s_max);
    rec.add("steps_used", plan.steps.size());
    rec.add_steps(plan.steps);
    rec.add("achieved", achieved);
    rec.add("abs_error", abs_error);
    rec.add("unitary_file", out_path);
    rec.print(out, common.json);
}

inline int cmd_verify(const CommonArgs& common, std::size_t samples, std::uint64_t seed,
                      bool corrupt_bounds, std::ostream& out) {
    const HermitianMatrix rho = read_hermitian_file(common.rho_path);
    const HermitianMatrix sigma = read_hermitian_file(common.sigma_path);

    std::optional<std::pair<double, double>> override_bounds;
    if (corrupt_bounds) {
        // negative control: collapse the interval to its midpoint so genuine
        // samples register as violations
        const EntropyInterval interval = orbit_relent_bounds(rho, sigma);
        const double mid = 0.5 * (interval.s_min + interval.s_max);
        override_bounds = {mid, mid};
    }
    const VerificationReport report =
        monte_carlo_containment(rho, sigma, samples, seed, override_bounds);

    detail::Record rec;
    detail::add_header(rec, common.rho_path, common.sigma_path);
    rec.add("pair_id", "rho:" + file_digest(common.rho_path) +
                           "|sigma:" + file_digest(common.sigma_path));
    rec.add("seed", static_cast<std::size_t>(seed));
    rec.add("samples_run", report.samples_run);
    rec.add("containment_violations", report.containment_violations);
    rec.add("worst_gap_below_min", report.worst_gap_below_min);
    rec.add("worst_gap_above_max", report.worst_gap_above_max);
    rec.add("empirical_min", report.empirical_min);
    rec.add("empirical_max", report.empirical_max);
    rec.print(out, common.json);
    return report.containment_violations == 0 ? kExitOk : kExitViolation;
}

inline void cmd_sweep(const CommonArgs& common, std::size_t steps, const std::string& csv_path,
                      std::ostream& out) {
    const HermitianMatrix rho = read_hermitian_file(common.rho_path);
    const HermitianMatrix sigma = read_hermitian_file(common.sigma_path);
    const EntropyInterval interval = orbit_relent_bounds(rho, sigma);

    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot write " + csv_path);
    csv << "target,achieved,abs_error,steps_used\n";

    double worst = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = interval.s_min + (interval.s_max - interval.s_min) *
                                              static_cast<double>(i) /
                                              static_cast<double>(steps - 1);
        auto [unitary, plan] = synthesize_target(rho, sigma, t);
        const double achieved = relative_entropy(conjugate(unitary, rho), sigma).bits;
        const double abs_error = std::abs(achieved - t);
        if (abs_error > kSynthVerifyTol)
            throw CommandFailure{kExitTarget, "sweep row " + std::to_string(i) +
                                                  " missed its target by " +
                                                  detail::fmt(abs_error)};
        worst = std::max(worst, abs_error);
        csv << detail::fmt(t) << ',' << detail::fmt(achieved) << ',' << detail::fmt(abs_error)
            << ',' << plan.steps.size() << '\n';
    }

    detail::Record rec;
    detail::add_header(rec, common.rho_path, common.sigma_path);
    rec.add("rows", steps);
    rec.add("max_abs_error", worst);
    rec.add("csv", csv_path);
    rec.print(out, common.json);
}

inline void cmd_bistoch(const CommonArgs& common, std::size_t samples, std::size_t mix,
                        std::uint64_t seed, std::ostream& out) {
    const HermitianMatrix rho = read_hermitian_file(common.rho_path);
    const HermitianMatrix sigma = read_hermitian_file(common.sigma_path);
    const BistochExploration res = bistoch_orbit_explore(rho, sigma, samples, mix, seed);
    const bool below = res.observed_min < res.unitary_interval.s_min - kIntervalTol;

    detail::Record rec;
    detail::add_header(rec, common.rho_path, common.sigma_path);
    rec.add("seed", static_cast<std::size_t>(seed));
    rec.add("samples", samples);
    rec.add("mix", mix);
    rec.add("unitary_s_min", res.unitary_interval.s_min);
    rec.add("unitary_s_max", res.unitary_interval.s_max);
    rec.add("observed_min", res.observed_min);
    rec.add("observed_max", res.observed_max);
    rec.add("below_unitary_min", below ? "yes" : "no");
    rec.print(out, common.json);
}

// Entry point shared by the binary and the in-process tests. `args` excludes
// the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Attainable range of the relative entropy S(U rho U* || sigma) over the "
                 "unitary orbit of rho: exact bounds, extremal and target-achieving "
                 "unitaries, and brute-force verification."};
    app.name(kToolName);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    int exit_code = kExitOk;
    std::uint64_t seed = 0;

    CommonArgs bounds_args, synth_args, verify_args, sweep_args, bistoch_args;

    auto add_common = [](CLI::App* sub, CommonArgs& a) {
        sub->add_option("--rho", a.rho_path, "density operator matrix file")->required();
        sub->add_option("--sigma", a.sigma_path, "reference operator matrix file")->required();
        sub->add_flag("--json", a.json, "emit a JSON object instead of key: value lines");
    };

    // bounds
    auto* bounds = app.add_subcommand(
        "bounds", "extremal values of S(U rho U* || sigma) and Tr(U rho U* sigma)");
    std::string emit_dir;
    bool nats = false;
    add_common(bounds, bounds_args);
    bounds->add_option("--emit-unitaries", emit_dir,
                       "directory for the achieving unitaries u_min.json / u_max.json");
    bounds->add_flag("--nats", nats, "report entropies in nats instead of bits");
    bounds->callback([&] { cmd_bounds(bounds_args, emit_dir, nats, out); });

    // synth
    auto* synth =
        app.add_subcommand("synth", "construct a unitary achieving a target entropy value");
    double target = 0.0;
    std::string synth_out;
    add_common(synth, synth_args);
    synth->add_option("--target", target, "target value in bits")->required();
    synth->add_option("--out", synth_out, "output matrix file for the unitary")->required();
    synth->callback([&] { cmd_synth(synth_args, target, synth_out, out); });

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Monte Carlo containment check of the bounds against Haar samples");
    std::size_t verify_samples = 10000;
    bool corrupt = false;
    add_common(verify, verify_args);
    verify->add_option("--samples", verify_samples, "number of Haar samples")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed (default: ORBIT_ENTROPY_SEED or 42)");
    verify->add_flag("--test-corrupt-bounds", corrupt,
                     "negative control: corrupt the interval so violations must appear")
        ->group("");
    verify->callback(
        [&] { exit_code = cmd_verify(verify_args, verify_samples, seed, corrupt, out); });

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "synthesize a grid of targets across the interval and write a CSV");
    std::size_t sweep_steps = 50;
    std::string sweep_out;
    add_common(sweep, sweep_args);
    sweep->add_option("--steps", sweep_steps, "number of targets (>= 2)")
        ->check(CLI::Range(static_cast<std::size_t>(2), std::numeric_limits<std::size_t>::max()));
    sweep->add_option("--out", sweep_out, "output CSV path")->required();
    sweep->callback([&] { cmd_sweep(sweep_args, sweep_steps, sweep_out, out); });

    // bistoch
    auto* bistoch = app.add_subcommand(
        "bistoch", "explore S(Phi(rho) || sigma) over sampled mixed-unitary channels");
    std::size_t bistoch_samples = 1000;
    std::size_t mix = 4;
    add_common(bistoch, bistoch_args);
    bistoch->add_option("--samples", bistoch_samples, "number of sampled channels")
        ->check(CLI::PositiveNumber);
    bistoch->add_option("--mix", mix, "unitaries per channel")->check(CLI::PositiveNumber);
    bistoch->add_option("--seed", seed, "RNG seed (default: ORBIT_ENTROPY_SEED or 42)");
    bistoch->callback(
        [&] { cmd_bistoch(bistoch_args, bistoch_samples, mix, seed, out); });

    try {
        seed = detail::default_seed();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        return exit_code;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    } catch (const CommandFailure& f) {
        err << "error: " << f.message << '\n';
        return f.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const NotPositiveDefinite& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotPd;
    } catch (const TargetOutOfInterval& e) {
        err << "error: " << e.what() << '\n';
        return kExitTarget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitOther;
    }
}

}  // namespace orbitent::cli

#endif
