#include "bosegas/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bosegas/bethe_kernel.hpp"
#include "bosegas/errors.hpp"
#include "bosegas/moments.hpp"
#include "bosegas/she_mc.hpp"
#include "bosegas/spectral.hpp"

namespace bosegas {

namespace {

using json = nlohmann::json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size() || !std::isfinite(v))
            throw std::invalid_argument(std::string("cannot parse ") + what + " entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
    return out;
}

json scaled_json(const ScaledComplex& v) {
    const ScaledComplex n = v.normalized();
    json j{{"mantissa_re", n.mantissa.real()}, {"mantissa_im", n.mantissa.imag()}, {"log_scale", n.log_scale}};
    if (const auto d = n.decimal()) {
        j["value_re"] = d->real();
        j["value_im"] = d->imag();
    } else {
        j["value_re"] = nullptr;
        j["value_im"] = nullptr;
    }
    return j;
}

// term,mantissa_re,mantissa_im,log_scale,value_re,value_im,tail_bound,step_estimate
std::string csv_row(const std::string& term, const QuadratureResult& r) {
    const ScaledComplex n = r.value.normalized();
    std::string row = term + "," + fmt17(n.mantissa.real()) + "," + fmt17(n.mantissa.imag()) + "," +
                      fmt17(n.log_scale) + ",";
    if (const auto d = n.decimal())
        row += fmt17(d->real()) + "," + fmt17(d->imag());
    else
        row += ",";
    row += "," + fmt17(r.tail_bound) + "," + fmt17(r.step_estimate) + "\n";
    return row;
}

struct Output {
    std::string path;
    std::ostream& fallback;

    void write(const std::string& text) const {
        if (path.empty()) {
            fallback << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file " + path);
        f << text;
    }
};

// ---------------------------------------------------------------- moment

struct MomentOptions {
    int n = 0;
    double t = 0.0;
    std::string x;
    std::string route = "partition";
    std::optional<double> theta;
    std::optional<double> epsilon;
    int nodes = 257;
    double half_width = 0.0;
    std::string abscissae;
    std::string format = "csv";
    std::string output;
};

int cmd_moment(const MomentOptions& o, std::ostream& out) {
    const auto coords = parse_list(o.x, "--x");
    if (static_cast<int>(coords.size()) != o.n)
        throw std::invalid_argument("--x has " + std::to_string(coords.size()) + " coordinates but --n is " +
                                    std::to_string(o.n));
    MomentRequest req{o.t, SpacePoints(coords), {}};
    req.plan.theta = o.theta;
    req.plan.epsilon = o.epsilon;
    req.plan.nodes_per_line = o.nodes;
    req.plan.half_width = o.half_width;
    validate_nodes_per_line(o.nodes);

    json inputs{{"command", "moment"}, {"n", o.n},          {"t", o.t},
                {"x", coords},         {"route", o.route},  {"nodes", o.nodes},
                {"half_width", o.half_width > 0.0 ? json(o.half_width) : json(nullptr)},
                {"theta", o.theta ? json(*o.theta) : json(nullptr)},
                {"epsilon", o.epsilon ? json(*o.epsilon) : json(nullptr)}};

    std::string text;
    if (o.route == "partition") {
        const PartitionExpansion e = partition_expansion(req);
        if (o.format == "csv") {
            text = "term,mantissa_re,mantissa_im,log_scale,value_re,value_im,tail_bound,step_estimate\n";
            for (const auto& term : e.terms) text += csv_row(term.lambda.to_string(), term.result);
            text += csv_row("total", e.total);
        } else {
            json terms = json::array();
            for (const auto& term : e.terms)
                terms.push_back({{"partition", term.lambda.to_string()},
                                 {"value", scaled_json(term.result.value)},
                                 {"tail_bound", term.result.tail_bound},
                                 {"step_estimate", term.result.step_estimate}});
            json doc{{"version", kVersion},
                     {"seed", nullptr},
                     {"inputs", inputs},
                     {"results", {{"value", scaled_json(e.total.value)}, {"terms", terms}}},
                     {"errors", {{"tail_bound", e.total.tail_bound}, {"step_estimate", e.total.step_estimate}}}};
            text = doc.dump(2) + "\n";
        }
    } else {
        std::vector<double> a;
        if (!o.abscissae.empty()) a = parse_list(o.abscissae, "--abscissae");
        const QuadratureResult r = moment_nested_contours(req, a);
        if (o.format == "csv") {
            text = "term,mantissa_re,mantissa_im,log_scale,value_re,value_im,tail_bound,step_estimate\n";
            text += csv_row("total", r);
        } else {
            json doc{{"version", kVersion},
                     {"seed", nullptr},
                     {"inputs", inputs},
                     {"results", {{"value", scaled_json(r.value)}, {"terms", json::array()}}},
                     {"errors", {{"tail_bound", r.tail_bound}, {"step_estimate", r.step_estimate}}}};
            text = doc.dump(2) + "\n";
        }
    }
    Output{o.output, out}.write(text);
    return kExitOk;
}

// ------------------------------------------------------- asymptotic-table

struct TableOptions {
    int n = 0;
    std::string t_list;
    std::string x;
    std::optional<double> x_power;
    int nodes = 257;
    std::string output;
};

int cmd_asymptotic_table(const TableOptions& o, std::ostream& out) {
    if (o.x.empty() == !o.x_power.has_value())
        throw std::invalid_argument("give exactly one of --x or --x-power");
    if (o.x_power && !(*o.x_power < 1.0))
        throw std::invalid_argument("--x-power must be < 1: coordinates must grow strictly sublinearly in t");
    std::vector<double> fixed;
    if (!o.x.empty()) {
        fixed = parse_list(o.x, "--x");
        if (static_cast<int>(fixed.size()) != o.n) throw std::invalid_argument("--x size does not match --n");
    }
    validate_nodes_per_line(o.nodes);
    const auto ts = parse_list(o.t_list, "--t-list");

    std::string text = "t,moment_mantissa,moment_logscale,leading_mantissa,leading_logscale,ratio,ratio_err\n";
    for (double t : ts) {
        std::vector<double> coords = fixed;
        if (o.x_power) {
            // x_i = i t^p, i = 0..n-1.
            coords.resize(static_cast<std::size_t>(o.n));
            for (int i = 0; i < o.n; ++i) coords[static_cast<std::size_t>(i)] = i * std::pow(t, *o.x_power);
        }
        MomentRequest req{t, SpacePoints(coords), {}};
        req.plan.nodes_per_line = o.nodes;
        const AsymptoticRatio r = asymptotic_ratio(req);
        const ScaledComplex m = r.moment.normalized();
        const ScaledComplex l = r.leading.normalized();
        text += fmt17(t) + "," + fmt17(m.mantissa.real()) + "," + fmt17(m.log_scale) + "," +
                fmt17(l.mantissa.real()) + "," + fmt17(l.log_scale) + "," + fmt17(r.ratio) + "," +
                fmt17(r.error) + "\n";
    }
    Output{o.output, out}.write(text);
    return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyOptions {
    std::string suite;
    int n_max = 30;
    int n = 3;
    std::optional<std::uint64_t> seed;
    std::size_t replicas = 10000;
    bool strict = false;
};

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}
    void check(bool ok, const std::string& what) {
        out_ << (ok ? "PASS " : "FAIL ") << what << "\n";
        failures_ += ok ? 0 : 1;
    }
    int exit_code() const { return failures_ == 0 ? kExitOk : kExitVerificationFailed; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

int verify_gap_suite(const VerifyOptions& o, std::ostream& out) {
    if (o.n_max < 2) throw std::invalid_argument("--n-max must be >= 2");
    Report rep(out);
    for (int n = 2; n <= o.n_max; ++n) {
        const GapReport g = verify_gap(n);
        std::ostringstream os;
        os << "gap n=" << n << " partitions=" << g.margins.size() << " spectral_gap=" << g.spectral_gap();
        rep.check(g.all_positive, os.str());
    }
    // Faulhaber closed form against literal summation.
    std::mt19937_64 rng(o.seed.value_or(42));
    std::uniform_int_distribution<int> pick_n(1, 12);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 17);
    int agree = 0;
    for (int k = 0; k < 100; ++k) {
        const auto parts = enumerate_partitions(pick_n(rng));
        const Partition& lambda = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)];
        const Rational theta(num(rng), den(rng));
        agree += remainder_exponent(lambda, theta) == remainder_exponent_by_summation(lambda, theta) ? 1 : 0;
    }
    rep.check(agree == 100, "faulhaber closed form equals literal sum on " + std::to_string(agree) + "/100 pairs");
    return rep.exit_code();
}

int verify_routes_suite(const VerifyOptions& o, std::ostream& out) {
    if (o.n < 1 || o.n > kMaxFullRouteN)
        throw UnsupportedError("routes suite supports 1 <= n <= " + std::to_string(kMaxFullRouteN));
    Report rep(out);
    std::mt19937_64 rng(o.seed.value_or(42));
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const int n = o.n;
    const bool reduced = n == 4;
    const double tol = reduced ? 1e-4 : 1e-6;

    std::vector<std::pair<std::string, std::vector<double>>> configs;
    configs.push_back({"zeros", std::vector<double>(static_cast<std::size_t>(n), 0.0)});
    if (!reduced) {
        std::vector<double> unit(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) unit[static_cast<std::size_t>(i)] = i;
        configs.push_back({"unit", unit});
        std::vector<double> rnd(static_cast<std::size_t>(n));
        for (auto& c : rnd) c = coord(rng);
        configs.push_back({"random", rnd});
    }
    const std::vector<double> times = reduced ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 2.0};
    for (double t : times) {
        for (const auto& [name, coords] : configs) {
            MomentRequest part{t, SpacePoints(coords), {}};
            MomentRequest nest = part;
            if (reduced) {
                part.plan.nodes_per_line = 65;
                nest.plan.nodes_per_line = 129;
            }
            const auto a = moment_partition_sum(part);
            const auto b = moment_nested_contours(nest);
            const double rel = std::abs(ratio(a.value - b.value, b.value));
            std::ostringstream os;
            os << "routes n=" << n << " t=" << t << " x=" << name << " rel_diff=" << rel << " tol=" << tol;
            rep.check(rel <= tol, os.str());
        }
    }
    return rep.exit_code();
}

int verify_determinant_suite(const VerifyOptions& o, std::ostream& out) {
    Report rep(out);
    std::mt19937_64 rng(o.seed.value_or(42));
    std::uniform_int_distribution<int> pick_len(1, 6);
    std::uniform_real_distribution<double> jitter(-0.3, 0.3);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto ell = static_cast<std::size_t>(pick_len(rng));
        // Well separated: imaginary parts 1.5 apart within u and within v, real parts of u - v near 2.
        std::vector<Complex> u(ell), v(ell);
        for (std::size_t i = 0; i < ell; ++i) {
            u[i] = {2.0 + jitter(rng), 1.5 * static_cast<double>(i) + jitter(rng)};
            v[i] = {jitter(rng), 1.5 * static_cast<double>(i) + 0.75 + jitter(rng)};
        }
        std::vector<Complex> m(ell * ell);
        for (std::size_t i = 0; i < ell; ++i)
            for (std::size_t j = 0; j < ell; ++j) m[i * ell + j] = 1.0 / (u[i] - v[j]);
        const Complex a = pivoted_determinant(m, ell);
        const Complex b = cauchy_determinant(u, v);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    std::ostringstream os;
    os << "determinant elimination vs Cauchy formula, 1000 instances, worst rel diff=" << worst << " tol=1e-10";
    rep.check(worst <= 1e-10, os.str());
    return rep.exit_code();
}

int verify_theta_suite(const VerifyOptions&, std::ostream& out) {
    Report rep(out);
    const SpacePoints x{0.0, 0.5, 1.0};
    const double t = 1.0;
    for (const auto& lambda : enumerate_partitions(3)) {
        MomentRequest base{t, x, {}};
        const auto ref = nu_lambda(base, lambda);
        const double theta0 = default_theta(lambda, t, x);
        for (double shift : {-0.3, 0.3}) {
            MomentRequest r = base;
            r.plan.theta = theta0 + shift;
            const auto v = nu_lambda(r, lambda);
            const double diff = std::abs(ratio(v.value - ref.value, ref.value));
            const double allowed = v.relative_error() + ref.relative_error();
            std::ostringstream os;
            os << "theta shift " << shift << " lambda=" << lambda.to_string() << " rel_diff=" << diff
               << " allowed=" << allowed;
            rep.check(diff <= allowed, os.str());
        }
        for (double eps : {0.05, 0.1}) {
            MomentRequest r = base;
            r.plan.epsilon = eps;
            const auto v = nu_lambda(r, lambda);
            const double diff = std::abs(ratio(v.value - ref.value, ref.value));
            const double allowed = v.relative_error() + ref.relative_error();
            std::ostringstream os;
            os << "epsilon " << eps << " lambda=" << lambda.to_string() << " rel_diff=" << diff
               << " allowed=" << allowed;
            rep.check(diff <= allowed, os.str());
        }
    }
    {
        const SpacePoints x2{0.0, 1.0};
        const std::vector<double> a1{0.75, -0.75};
        const std::vector<double> a2{1.2, -0.4};
        for (double tt : {0.5, 1.0}) {
            const MomentRequest r{tt, x2, {}};
            const auto u = moment_nested_contours(r, a1);
            const auto v = moment_nested_contours(r, a2);
            const double diff = std::abs(ratio(u.value - v.value, v.value));
            const double allowed = u.relative_error() + v.relative_error();
            std::ostringstream os;
            os << "nested spacing n=2 t=" << tt << " rel_diff=" << diff << " allowed=" << allowed;
            rep.check(diff <= allowed, os.str());
        }
    }
    return rep.exit_code();
}

int verify_mc_suite(const VerifyOptions& o, std::ostream& out) {
    Report rep(out);
    const double t = 0.5;
    const double dx = 0.05;
    const GridSpec grid{dx, 0.5 * dx * dx, minimal_half_width(dx, t, 0.0), t};
    const std::vector<SpacePoints> sets{SpacePoints{0.0}, SpacePoints{0.0, 0.0}};
    const auto est = estimate_moments(grid, sets, o.replicas, o.seed.value_or(42));

    const double heat = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
    {
        const double dev = std::abs(est[0].mean - heat);
        std::ostringstream os;
        os << "mc n=1 mean=" << est[0].mean << " se=" << est[0].std_error << " target=" << heat
           << " |dev|/se=" << dev / est[0].std_error;
        rep.check(dev <= 3.0 * est[0].std_error, os.str());
    }
    {
        const auto q = moment_nested_contours(MomentRequest{t, sets[1], {}});
        const double target = q.value.to_complex().real();
        const double dev = std::abs(est[1].mean - target);
        const double allowed = 3.0 * est[1].std_error + 0.1 * std::abs(target);
        std::ostringstream os;
        os << "mc n=2 mean=" << est[1].mean << " se=" << est[1].std_error << " target=" << target
           << " allowed=" << allowed;
        rep.check(dev <= allowed, os.str());
    }
    out << "clipped updates: " << est[0].clipped << "\n";
    return rep.exit_code();
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    const bool randomized = o.suite == "routes" || o.suite == "determinant" || o.suite == "mc" || o.suite == "gap";
    if (o.strict && randomized && !o.seed)
        throw std::invalid_argument("--strict: suite '" + o.suite + "' is randomized and needs --seed");
    if (o.suite == "gap") return verify_gap_suite(o, out);
    if (o.suite == "routes") return verify_routes_suite(o, out);
    if (o.suite == "determinant") return verify_determinant_suite(o, out);
    if (o.suite == "theta") return verify_theta_suite(o, out);
    if (o.suite == "mc") return verify_mc_suite(o, out);
    throw std::invalid_argument("unknown suite '" + o.suite + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact multi-point moments of the stochastic heat equation with delta initial data"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    MomentOptions mo;
    auto* moment = app.add_subcommand("moment", "Compute E[prod Z(t, x_i)] by quadrature");
    moment->add_option("--n", mo.n, "Number of points")->required()->check(CLI::PositiveNumber);
    moment->add_option("--t", mo.t, "Time (> 0)")->required()->check(CLI::PositiveNumber);
    moment->add_option("--x", mo.x, "Comma-separated coordinates")->required();
    moment->add_option("--route", mo.route, "partition | nested")->check(CLI::IsMember({"partition", "nested"}));
    moment->add_option("--theta", mo.theta, "Base contour abscissa (default: per-partition saddle)");
    moment->add_option("--epsilon", mo.epsilon, "Cluster line offset (default min(1/(2(n-1)), 0.1))");
    moment->add_option("--nodes", mo.nodes, "Trapezoid nodes per line (odd)");
    moment->add_option("--half-width", mo.half_width, "Truncation half-width (default: automatic)");
    moment->add_option("--abscissae", mo.abscissae, "Nested route: comma-separated a_k");
    moment->add_option("--format", mo.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    moment->add_option("--output", mo.output, "Write to file instead of stdout");

    TableOptions to;
    auto* table = app.add_subcommand("asymptotic-table", "Ratio of the moment to the leading asymptotic over t");
    table->add_option("--n", to.n, "Number of points")->required()->check(CLI::PositiveNumber);
    table->add_option("--t-list", to.t_list, "Comma-separated times")->required();
    table->add_option("--x", to.x, "Fixed comma-separated coordinates");
    table->add_option("--x-power", to.x_power, "Use x_i = i t^p, i = 0..n-1, p < 1");
    table->add_option("--nodes", to.nodes, "Trapezoid nodes per line (odd)");
    table->add_option("--output", to.output, "Write to file instead of stdout");

    VerifyOptions vo;
    vo.strict = std::getenv("CI") != nullptr;
    auto* verify = app.add_subcommand("verify", "Run an invariant suite; exit 0 on pass, 1 on failure");
    verify->add_option("--suite", vo.suite, "gap | routes | determinant | theta | mc")->required();
    verify->add_option("--n-max", vo.n_max, "gap: largest n");
    verify->add_option("--n", vo.n, "routes: number of points");
    verify->add_option("--seed", vo.seed, "Seed for randomized suites");
    verify->add_option("--replicas", vo.replicas, "mc: replicas");
    verify->add_flag("--strict,!--no-strict", vo.strict, "Require --seed for randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*moment) {
            if (mo.n > kMaxFullRouteN)
                throw UnsupportedError("moment supports n <= " + std::to_string(kMaxFullRouteN));
            return cmd_moment(mo, out);
        }
        if (*table) {
            if (to.n > kMaxFullRouteN)
                throw UnsupportedError("asymptotic-table supports n <= " + std::to_string(kMaxFullRouteN));
            return cmd_asymptotic_table(to, out);
        }
        return cmd_verify(vo, out);
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
}

}  // namespace bosegas
