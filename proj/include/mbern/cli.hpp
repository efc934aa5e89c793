#pragma once

#include "mbern/bounds.hpp"
#include "mbern/frechet.hpp"
#include "mbern/ray_cone.hpp"
#include "mbern/sampler.hpp"
#include "mbern/solvers.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/*
 * Batch surface: ProblemSpec JSON in, ResultReport JSON out.
 *
 * Exit codes: 0 success or feasible, 2 infeasible, 3 invalid input,
 * 4 ray enumeration refused above the dimension cap.
 */
namespace mbern::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kInfeasible = 2, kInvalidInput = 3, kCapExceeded = 4 };

/** Malformed or inconsistent input; the message names the offending JSON path. */
class InputError : public std::invalid_argument
{
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Mode { Rays, Direct };
enum class Objective { None, MinHigherMoments };

struct PairValue
{
    unsigned i = 0, j = 0; ///< one-based as written
    Rational value;
};

struct ProblemSpec
{
    unsigned m = 0;
    RationalVector p;
    std::optional<std::vector<PairValue>> rho;
    std::optional<std::vector<PairValue>> mu2;
    std::optional<RationalVector> density; ///< canonical order
    Mode mode = Mode::Rays;
    Objective objective = Objective::None;
    std::uint64_t seed = 1;
    std::size_t n = 1000;
};

struct RunOptions
{
    std::optional<Mode> mode;
    bool paper_order = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    unsigned precision = 12; ///< digits after the decimal point in renderings
    std::optional<std::string> csv_path;
    std::optional<std::string> density_path;
    unsigned ray_cap = RayEnumerationOptions{}.max_dimension;
};

struct Outcome
{
    json report;
    int exit_code = kOk;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

inline Rational parse_value(const json& v, const std::string& where)
{
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_number_float()) return parse_rational(v.dump()); // the literal as written
    } catch (const ParseError& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected a rational string such as \"1/3\" or \"0.25\"");
}

inline std::vector<PairValue> parse_pairs(const json& arr, const std::string& key, unsigned m)
{
    if (!arr.is_array()) throw InputError(key + ": expected an array of {i, j, value}");
    std::vector<PairValue> out;
    std::set<std::pair<unsigned, unsigned>> seen;
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string where = key + "[" + std::to_string(k) + "]";
        const json& e = arr[k];
        if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("value"))
            throw InputError(where + ": expected an object with i, j and value");
        if (!e["i"].is_number_integer() || !e["j"].is_number_integer())
            throw InputError(where + ": i and j must be integers");
        const long long i = e["i"].get<long long>(), j = e["j"].get<long long>();
        if (!(1 <= i && i < j && j <= static_cast<long long>(m)))
            throw InputError(where + ": need 1 <= i < j <= m (got i=" + std::to_string(i) + ", j=" +
                             std::to_string(j) + ", m=" + std::to_string(m) + ")");
        if (!seen.emplace(static_cast<unsigned>(i), static_cast<unsigned>(j)).second)
            throw InputError(where + ": duplicate pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
        out.push_back({static_cast<unsigned>(i), static_cast<unsigned>(j), parse_value(e["value"], where + ".value")});
    }
    return out;
}

inline Mode parse_mode(const std::string& s, const std::string& where)
{
    if (s == "rays") return Mode::Rays;
    if (s == "direct") return Mode::Direct;
    throw InputError(where + ": mode must be \"rays\" or \"direct\"");
}

} // namespace detail

/** Reads a density: a bare array of rationals, or an object/report carrying density.exact. */
inline RationalVector parse_density_json(const json& j, const std::string& where = "density")
{
    const json* node = &j;
    if (j.is_object() && j.contains("density")) node = &j["density"];
    bool paper = false;
    if (node->is_object()) {
        paper = node->value("order", std::string("canonical")) == "paper";
        if (!node->contains("exact")) throw InputError(where + ": object has no \"exact\" array");
        node = &(*node)["exact"];
    }
    if (!node->is_array()) throw InputError(where + ": expected an array of rationals");
    RationalVector v;
    for (std::size_t k = 0; k < node->size(); ++k)
        v.push_back(detail::parse_value((*node)[k], where + "[" + std::to_string(k) + "]"));
    const std::size_t n = v.size();
    if (n < 2 || (n & (n - 1)) != 0) throw InputError(where + ": length " + std::to_string(n) + " is not 2^m");
    if (paper) v = from_paper_order(v, static_cast<unsigned>(std::countr_zero(n)));
    return v;
}

inline ProblemSpec parse_problem(const json& j)
{
    if (!j.is_object()) throw InputError("$: expected a JSON object");
    ProblemSpec s;
    if (!j.contains("m") || !j["m"].is_number_integer()) throw InputError("m: required integer");
    const long long m = j["m"].get<long long>();
    if (m < 1 || m > static_cast<long long>(kMaxDimension))
        throw InputError("m: " + std::to_string(m) + " is outside [1, " + std::to_string(kMaxDimension) + "]");
    s.m = static_cast<unsigned>(m);
    if (!j.contains("p") || !j["p"].is_array()) throw InputError("p: required array of rationals");
    if (j["p"].size() != s.m)
        throw InputError("p: has " + std::to_string(j["p"].size()) + " entries, m is " + std::to_string(s.m));
    for (std::size_t k = 0; k < s.m; ++k) {
        Rational v = detail::parse_value(j["p"][k], "p[" + std::to_string(k) + "]");
        if (!(v > 0 && v < 1)) throw InputError("p[" + std::to_string(k) + "]: " + format_rational(v) + " is not in (0, 1)");
        s.p.push_back(std::move(v));
    }
    if (j.contains("rho")) s.rho = detail::parse_pairs(j["rho"], "rho", s.m);
    if (j.contains("mu2")) s.mu2 = detail::parse_pairs(j["mu2"], "mu2", s.m);
    if (s.rho && s.mu2) throw InputError("$: give exactly one of rho and mu2");
    if (s.rho)
        for (std::size_t k = 0; k < s.rho->size(); ++k)
            if ((*s.rho)[k].value < -1 || (*s.rho)[k].value > 1)
                throw InputError("rho[" + std::to_string(k) + "].value: outside [-1, 1]");
    if (j.contains("density")) {
        s.density = parse_density_json(j["density"]);
        if (s.density->size() != support_size(s.m)) throw InputError("density: length does not match 2^m");
    }
    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) throw InputError("options: expected an object");
        if (o.contains("mode")) s.mode = detail::parse_mode(o["mode"].get<std::string>(), "options.mode");
        if (o.contains("objective")) {
            const std::string obj = o["objective"].get<std::string>();
            if (obj == "none") s.objective = Objective::None;
            else if (obj == "min-higher-moments") s.objective = Objective::MinHigherMoments;
            else throw InputError("options.objective: must be \"none\" or \"min-higher-moments\"");
        }
        if (o.contains("seed")) {
            if (!o["seed"].is_number_integer() || o["seed"].get<long long>() < 0) throw InputError("options.seed: expected an unsigned integer");
            s.seed = o["seed"].get<std::uint64_t>();
        }
        if (o.contains("n")) {
            if (!o["n"].is_number_integer() || o["n"].get<long long>() < 1)
                throw InputError("options.n: expected a positive integer");
            s.n = o["n"].get<std::size_t>();
        }
    }
    return s;
}

/// Lex-ordered values from a complete {i, j, value} list.
inline RationalVector complete_pairs(const std::vector<PairValue>& vals, unsigned m, const std::string& key)
{
    RationalVector out(pair_count(m));
    std::vector<bool> have(out.size(), false);
    for (const auto& v : vals) {
        const std::size_t k = pair_position(v.i - 1, v.j - 1, m);
        out[k] = v.value;
        have[k] = true;
    }
    for (std::size_t k = 0; k < have.size(); ++k)
        if (!have[k]) {
            auto pr = lex_pairs(m)[k];
            throw InputError(key + ": missing pair (" + std::to_string(pr.first + 1) + "," +
                             std::to_string(pr.second + 1) + ")");
        }
    return out;
}

// ---------------------------------------------------------------------------
// Report pieces
// ---------------------------------------------------------------------------

inline json exact_array(const RationalVector& v)
{
    json a = json::array();
    for (const auto& r : v) a.push_back(format_rational(r));
    return a;
}

inline json decimal_array(const RationalVector& v, unsigned places)
{
    json a = json::array();
    for (const auto& r : v) a.push_back(format_fixed(r, places));
    return a;
}

inline json rational_json(const Rational& r, unsigned places)
{
    return json{{"exact", format_rational(r)}, {"decimal", format_fixed(r, places)}};
}

inline json density_json(const RationalVector& f, unsigned m, bool paper_order, unsigned places)
{
    json labels = json::array();
    std::vector<std::size_t> order(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) order[k] = paper_order ? paper_row_to_canonical(k, m) : k;
    RationalVector shown;
    for (std::size_t k : order) {
        labels.push_back(support_label(k, m));
        shown.push_back(f[k]);
    }
    json d{{"order", paper_order ? "paper" : "canonical"},
           {"support", labels},
           {"exact", exact_array(shown)},
           {"decimal", decimal_array(shown, places)}};
    if (paper_order)
        d["bijection"] = "display row k holds canonical index 2^m-1-k; canonical index j has x_i = bit (i-1) of j";
    return d;
}

inline json pairs_json(const RationalVector& v, unsigned m, unsigned places)
{
    json a = json::array();
    auto pairs = lex_pairs(m);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        a.push_back({{"i", pairs[k].first + 1},
                     {"j", pairs[k].second + 1},
                     {"exact", format_rational(v[k])},
                     {"decimal", format_fixed(v[k], places)}});
    return a;
}

inline json bounds_json(const std::vector<PairBound>& bounds, unsigned places)
{
    json a = json::array();
    for (const auto& b : bounds)
        a.push_back({{"i", b.i + 1},
                     {"j", b.j + 1},
                     {"moment", {{"lo", format_rational(b.moment_lo)},
                                 {"hi", format_rational(b.moment_hi)},
                                 {"lo_decimal", format_fixed(b.moment_lo, places)},
                                 {"hi_decimal", format_fixed(b.moment_hi, places)}}},
                     {"rho", {{"lo", b.rho_lo.exact_string()},
                              {"hi", b.rho_hi.exact_string()},
                              {"lo_decimal", b.rho_lo.decimal(places)},
                              {"hi_decimal", b.rho_hi.decimal(places)}}}});
    return a;
}

inline json theta_json(const ThetaVector& t, unsigned places)
{
    json subsets = json::array();
    for (std::size_t a = 0; a < t.entries.size(); ++a) {
        std::string s = "{";
        for (unsigned i = 0; i < t.m; ++i)
            if ((a >> i) & 1U) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
        subsets.push_back(s + "}");
    }
    return {{"subsets", subsets}, {"exact", exact_array(t.entries)}, {"decimal", decimal_array(t.entries, places)}};
}

inline json certificate_json(const Certificate& c)
{
    return {{"rows", c.row_labels},
            {"y", exact_array(c.y)},
            {"b", exact_array(c.b)},
            {"verified", c.verify()},
            {"meaning", "y'A >= 0 componentwise and y'b < 0, so A x = b has no nonnegative solution"}};
}

inline json lambda_json(const RationalVector& lambda, unsigned places)
{
    json a = json::array();
    for (std::size_t k = 0; k < lambda.size(); ++k)
        if (lambda[k] != 0)
            a.push_back({{"ray", k + 1}, {"exact", format_rational(lambda[k])}, {"decimal", format_fixed(lambda[k], places)}});
    return a;
}

/** CSV: one ray per column, rows in canonical (or display) support order, exact "a/b" cells. */
inline void write_rays_csv(std::ostream& os, const RayMatrix& rays, bool paper_order)
{
    os << "support";
    for (std::size_t c = 0; c < rays.n_rays(); ++c) os << ",r" << (c + 1);
    os << '\n';
    const std::size_t n = support_size(rays.m);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t x = paper_order ? paper_row_to_canonical(k, rays.m) : k;
        os << support_label(x, rays.m);
        for (const auto& col : rays.columns) os << ',' << format_rational(col[x]);
        os << '\n';
    }
}

/** Writes through a temporary file and renames, so readers never see partial output. */
inline void write_atomically(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace detail {

struct Context
{
    const ProblemSpec& spec;
    const RunOptions& opts;
    Mode mode;
    FrechetClass cls;
    json report;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Context(const std::string& command, const ProblemSpec& s, const RunOptions& o)
        : spec(s), opts(o), mode(o.mode.value_or(s.mode)), cls(s.p)
    {
        report["command"] = command;
        report["m"] = s.m;
        report["p"] = exact_array(s.p);
        report["mode"] = mode == Mode::Rays ? "rays" : "direct";
    }

    RayMatrix rays()
    {
        RayEnumerationStats stats;
        RayMatrix r = extreme_rays(cls, RayEnumerationOptions{opts.ray_cap}, &stats);
        report["ray_count"] = r.n_rays();
        report["diagnostics"]["adjacency_tests"] = stats.adjacency_tests;
        report["diagnostics"]["rays_after_insertion"] = stats.rays_after_insertion;
        return r;
    }

    Outcome done(int code)
    {
        report["diagnostics"]["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return {std::move(report), code};
    }
};

inline PairMoments target_moments(Context& ctx)
{
    const ProblemSpec& s = ctx.spec;
    if (s.rho) {
        CorrelationSpec rho(s.m, complete_pairs(*s.rho, s.m, "rho"));
        PairMoments mu = mu2_from_rho(ctx.cls, rho);
        ctx.report["target"]["rho"] = pairs_json(rho.entries, s.m, ctx.opts.precision);
        ctx.report["target"]["mu2"] = pairs_json(mu.entries, s.m, ctx.opts.precision);
        return mu;
    }
    if (s.mu2) {
        PairMoments mu(s.m, complete_pairs(*s.mu2, s.m, "mu2"));
        ctx.report["target"]["mu2"] = pairs_json(mu.entries, s.m, ctx.opts.precision);
        return mu;
    }
    throw InputError("$: this command needs rho or mu2");
}

inline void put_density(Context& ctx, const Density& f)
{
    ctx.report["density"] = density_json(f.values(), f.m(), ctx.opts.paper_order, ctx.opts.precision);
    ctx.report["theta"] = theta_json(theta_from_density(ctx.cls, f), ctx.opts.precision);
    ctx.report["check"] = {{"margins", exact_array(margins_of(f))},
                           {"pair_moments", pairs_json(pair_moments_of(f).entries, f.m(), ctx.opts.precision)}};
}

inline void put_fit(Context& ctx, const FitResult& fit)
{
    ctx.report["status"] = fit.feasible() ? "feasible" : "infeasible";
    ctx.report["diagnostics"]["pivots"] = fit.pivots;
    if (fit.feasible()) {
        put_density(ctx, *fit.density);
        if (!fit.lambda.empty()) ctx.report["lambda"] = lambda_json(fit.lambda, ctx.opts.precision);
        if (fit.objective) ctx.report["objective"] = rational_json(*fit.objective, ctx.opts.precision);
    } else {
        ctx.report["certificate"] = certificate_json(*fit.certificate);
    }
}

inline FitResult fit_for(Context& ctx, const PairMoments& mu, bool minimize)
{
    if (ctx.mode == Mode::Rays) {
        RayMatrix r = ctx.rays();
        MomentMap a2p = moment_map(r, 2);
        return minimize ? minimize_higher_moments(r, a2p, mu) : fit_lambda(r, a2p, mu);
    }
    return minimize ? minimize_higher_moments(ctx.cls, mu) : fit_density_direct(ctx.cls, mu);
}

} // namespace detail

inline Outcome run_rays(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("rays", s, o);
    if (ctx.mode != Mode::Rays) throw InputError("rays: --mode direct does not apply to ray enumeration");
    RayMatrix r = ctx.rays();
    ctx.report["status"] = "ok";
    json cols = json::array();
    for (const auto& c : r.columns) cols.push_back(o.paper_order ? exact_array(to_paper_order(c.values(), s.m)) : exact_array(c.values()));
    ctx.report["rays"] = {{"order", o.paper_order ? "paper" : "canonical"}, {"columns", cols}};
    json a2p = json::array();
    if (s.m >= 2) {
        MomentMap mm = moment_map(r, 2);
        for (std::size_t k = 0; k < mm.rows(); ++k) {
            RationalVector row(mm.entries.row(k).begin(), mm.entries.row(k).end());
            auto pr = lex_pairs(s.m)[k];
            a2p.push_back({{"i", pr.first + 1}, {"j", pr.second + 1}, {"exact", exact_array(row)}});
        }
    }
    ctx.report["a2p"] = a2p;
    if (o.csv_path) {
        std::ostringstream os;
        write_rays_csv(os, r, o.paper_order);
        write_atomically(*o.csv_path, os.str());
    }
    return ctx.done(kOk);
}

inline Outcome run_bounds(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("bounds", s, o);
    std::vector<PairBound> b = ctx.mode == Mode::Rays ? pair_bounds(ctx.cls, ctx.rays()) : pair_bounds_direct(ctx.cls);
    ctx.report["status"] = "ok";
    ctx.report["bounds"] = bounds_json(b, o.precision);
    return ctx.done(kOk);
}

inline Outcome run_fit(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("fit", s, o);
    PairMoments mu = detail::target_moments(ctx);
    FitResult fit = detail::fit_for(ctx, mu, s.objective == Objective::MinHigherMoments);
    detail::put_fit(ctx, fit);
    return ctx.done(fit.feasible() ? kOk : kInfeasible);
}

inline Outcome run_minimize(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("minimize", s, o);
    PairMoments mu = detail::target_moments(ctx);
    FitResult fit = detail::fit_for(ctx, mu, true);
    detail::put_fit(ctx, fit);
    return ctx.done(fit.feasible() ? kOk : kInfeasible);
}

inline Outcome run_nearest(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("nearest", s, o);
    if (!s.rho) throw InputError("rho: nearest needs target correlations");
    CorrelationSpec rho(s.m, complete_pairs(*s.rho, s.m, "rho"));
    ctx.report["target"]["rho"] = pairs_json(rho.entries, s.m, o.precision);
    ProjectionResult pr;
    if (ctx.mode == Mode::Rays) {
        RayMatrix r = ctx.rays();
        pr = nearest_feasible_correlation(ctx.cls, r, rho);
        ctx.report["lambda"] = lambda_json(pr.lambda, o.precision);
    } else {
        pr = nearest_feasible_correlation_direct(ctx.cls, rho);
    }
    ctx.report["status"] = pr.squared_distance == 0 ? "feasible" : "projected";
    ctx.report["rho_star"] = pairs_json(pr.rho_star.entries, s.m, o.precision);
    ctx.report["mu2_star"] = pairs_json(pr.mu2_star.entries, s.m, o.precision);
    ctx.report["distance"] = {{"squared_exact", format_rational(pr.squared_distance)},
                              {"decimal", format_fixed(sqrt_rational(pr.squared_distance), o.precision)}};
    ctx.report["diagnostics"]["iterations"] = pr.iterations;
    detail::put_density(ctx, pr.density);
    return ctx.done(kOk);
}

inline Outcome run_sample(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("sample", s, o);
    std::optional<Density> f;
    if (s.density) {
        f = Density(*s.density);
    } else {
        PairMoments mu = detail::target_moments(ctx);
        FitResult fit = detail::fit_for(ctx, mu, s.objective == Objective::MinHigherMoments);
        if (!fit.feasible()) {
            detail::put_fit(ctx, fit);
            return ctx.done(kInfeasible);
        }
        f = *fit.density;
    }
    const std::uint64_t seed = o.seed.value_or(s.seed);
    const std::size_t n = o.n.value_or(s.n);
    SampleBatch batch = sample(*f, n, seed);
    ctx.report["status"] = "ok";
    detail::put_density(ctx, *f);
    ctx.report["sample"] = {{"n", n},
                            {"seed", seed},
                            {"generator_id", batch.generator_id},
                            {"means", exact_array(empirical_moments(batch, 1))},
                            {"pair_moments", s.m >= 2 ? pairs_json(empirical_moments(batch, 2), s.m, o.precision) : json::array()}};
    if (o.csv_path) {
        std::ostringstream os;
        write_batch_csv(os, batch);
        write_atomically(*o.csv_path, os.str());
    }
    return ctx.done(kOk);
}

inline Outcome run_theta(const ProblemSpec& s, const RunOptions& o)
{
    detail::Context ctx("theta", s, o);
    RationalVector values;
    if (o.density_path) {
        std::ifstream in(*o.density_path);
        if (!in) throw InputError("--density: cannot open " + *o.density_path);
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw InputError("--density: " + std::string(e.what()));
        }
        values = parse_density_json(j, "--density");
    } else if (s.density) {
        values = *s.density;
    } else {
        throw InputError("density: theta needs a density (input field or --density file)");
    }
    if (values.size() != support_size(s.m)) throw InputError("density: length does not match 2^m");
    Density f = [&] {
        try {
            return Density(values);
        } catch (const InvalidDistribution& e) {
            throw InputError(std::string("density: ") + e.what());
        }
    }();
    ThetaVector t = theta_from_density(ctx.cls, f);
    bool conditions = t[0] == 1;
    for (unsigned i = 0; i < s.m; ++i) conditions = conditions && t[std::size_t{1} << i] == 0;
    ctx.report["status"] = "ok";
    ctx.report["in_class"] = in_class(ctx.cls, f);
    ctx.report["theta_conditions_hold"] = conditions;
    detail::put_density(ctx, f);
    return ctx.done(kOk);
}

/** Dispatches a subcommand and maps library errors onto exit codes. */
inline Outcome run(const std::string& command, const json& input, const RunOptions& o)
{
    try {
        ProblemSpec s = parse_problem(input);
        if (command == "rays") return run_rays(s, o);
        if (command == "bounds") return run_bounds(s, o);
        if (command == "fit") return run_fit(s, o);
        if (command == "nearest") return run_nearest(s, o);
        if (command == "minimize") return run_minimize(s, o);
        if (command == "sample") return run_sample(s, o);
        if (command == "theta") return run_theta(s, o);
        throw InputError("unknown command '" + command + "'");
    } catch (const DimensionCapExceeded& e) {
        return {json{{"command", command}, {"status", "cap-exceeded"}, {"error", e.what()}}, kCapExceeded};
    } catch (const std::invalid_argument& e) {
        return {json{{"command", command}, {"status", "invalid-input"}, {"error", e.what()}}, kInvalidInput};
    }
}

} // namespace mbern::cli
