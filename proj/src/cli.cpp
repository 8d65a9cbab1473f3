#include "sqfull/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqfull/constants.hpp"
#include "sqfull/errors.hpp"
#include "sqfull/limits.hpp"
#include "sqfull/paths.hpp"
#include "sqfull/squarefull.hpp"
#include "sqfull/variance_ap.hpp"
#include "sqfull/variance_short.hpp"

namespace sqfull::cli {

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace

std::uint64_t parse_count(std::string_view text)
{
    std::string cleaned;
    for (char c : text)
        if (c != '_') cleaned.push_back(c);
    if (cleaned.empty()) throw UsageError("empty number");
    bool plain = true;
    for (char c : cleaned) plain = plain && (c >= '0' && c <= '9');
    if (plain) {
        if (cleaned.size() > 20) throw UsageError("number out of range: " + std::string(text));
        errno = 0;
        const unsigned long long v = std::strtoull(cleaned.c_str(), nullptr, 10);
        if (errno == ERANGE) throw UsageError("number out of range: " + std::string(text));
        return v;
    }
    char* end = nullptr;
    const long double v = std::strtold(cleaned.c_str(), &end);
    if (end != cleaned.c_str() + cleaned.size() || !(v >= 0) || v > 1.8e19L || v != std::floor(v))
        throw UsageError("not a nonnegative integer: " + std::string(text));
    return static_cast<std::uint64_t>(v);
}

std::vector<std::uint64_t> parse_count_list(std::string_view text)
{
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        out.push_back(parse_count(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string checksum(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

using u64 = std::uint64_t;

std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw UsageError("malformed CSV line: " + line);
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        char* e1 = nullptr;
        char* e2 = nullptr;
        const double va = std::strtod(a.c_str(), &e1);
        const double vb = std::strtod(b.c_str(), &e2);
        const bool numeric = e1 != a.c_str() && e2 != b.c_str();
        if (!numeric) {
            if (first) {
                first = false;
                continue; // header
            }
            throw UsageError("malformed CSV line: " + line);
        }
        first = false;
        rows.emplace_back(va, vb);
    }
    return rows;
}

std::string fit_column(const std::vector<ScalePoint>& pts)
{
    if (pts.size() < 3) return "";
    return format_real(exponent_fit(pts).slope);
}

// Raw option text; numbers are parsed by parse_count so that 1e9 and
// 46_674_434 are accepted everywhere.
struct Options
{
    std::string x, H, X, q, alpha, strata = "4096", sweep, grid = "4096", P, Y, res;
    std::string kind, method = "both", input, points;
    double      H_exponent = 0.5;
    double      q_exponent = 0.55;
    bool        exact = false, list = false, literal = false, divisor23 = false;
};

void run_count(const Options& o, std::ostream& out) { out << count_squarefull(parse_count(o.x)) << '\n'; }

void run_count_pairs(const Options& o, std::ostream& out)
{
    out << count_pairs_23(parse_count(o.x)) << '\n';
}

void run_delta(const Options& o, std::ostream& out)
{
    out << "x,exact,main,error\n";
    for (u64 x : parse_count_list(o.x)) {
        const CountReport r = (o.kind == "pairs") ? delta_23(x) : delta_Q(x);
        out << r.x << ',' << r.exact_count << ',' << format_real(r.main_term) << ','
            << format_real(r.error) << '\n';
    }
}

void run_window(const Options& o, std::ostream& out)
{
    const SquareFullWindow w = squarefull_in_window(parse_count(o.x), parse_count(o.H));
    if (!o.list) {
        out << w.count() << '\n';
        return;
    }
    out << "n,a,b\n";
    for (const auto& m : w.members) out << m.n << ',' << m.a << ',' << m.b << '\n';
}

void run_constants(const Options& o, std::ostream& out)
{
    ConstantCParams params;
    if (!o.P.empty()) params.P = parse_count(o.P);
    if (!o.Y.empty()) params.Y = static_cast<double>(parse_count(o.Y));
    if (!o.res.empty()) params.resolution = static_cast<int>(parse_count(o.res));
    const ConstantCReport r = constant_C(params);
    nlohmann::ordered_json j;
    j["zeta_factor"] = r.zeta_factor;
    j["euler_product"] = r.euler.value;
    j["P"] = r.euler.P;
    j["euler_tail_bound"] = r.euler.tail_bound;
    j["weight_integral"] = r.weight.value;
    j["Y"] = r.weight.Y;
    j["resolution"] = r.weight.resolution;
    j["weight_tail"] = r.weight.tail;
    j["weight_refined"] = r.weight_refined;
    j["C"] = r.C;
    out << j.dump() << '\n';
}

void run_variance_short(const Options& o, std::ostream& out, std::ostream& err)
{
    const std::vector<u64> Xs = o.sweep.empty() ? std::vector<u64>{parse_count(o.X)} : parse_count_list(o.sweep);
    const VarianceMode mode = o.exact ? VarianceMode::exact : VarianceMode::stratified;
    const u64 strata = parse_count(o.strata);
    std::vector<VarianceReport> reports;
    std::vector<ScalePoint> pts;
    for (u64 X : Xs) {
        VarianceReport r;
        if (o.divisor23) {
            r = divisor23_variance(X, strata, mode);
        } else {
            const u64 H = !o.H.empty() ? parse_count(o.H)
                                       : static_cast<u64>(std::llround(std::pow(static_cast<double>(X), o.H_exponent)));
            r = short_interval_variance(X, H, strata, mode);
        }
        err << "X=" << X << " statistic=" << format_real(r.statistic) << '\n';
        if (r.statistic > 0) pts.push_back({static_cast<double>(X), r.statistic});
        reports.push_back(r);
    }
    const std::string fit = fit_column(pts);
    out << "X,H,strata,statistic,fit_exponent\n";
    for (const auto& r : reports) {
        out << r.X << ',' << (r.H ? std::to_string(*r.H) : std::string()) << ',' << r.strata << ','
            << format_real(r.statistic) << ',' << fit << '\n';
    }
}

void run_variance_ap(const Options& o, std::ostream& out, std::ostream& err)
{
    const std::vector<u64> xs = o.sweep.empty() ? std::vector<u64>{parse_count(o.x)} : parse_count_list(o.sweep);
    out << "x,q,alpha,statistic,prediction,ratio\n";
    for (u64 x : xs) {
        const u64 q = (!o.q.empty() && o.sweep.empty())
                          ? parse_count(o.q)
                          : nearest_prime(static_cast<u64>(std::llround(std::pow(static_cast<double>(x), o.q_exponent))));
        std::optional<u64> alpha;
        if (!o.alpha.empty()) alpha = parse_count(o.alpha);
        const APVarianceReport r = ap_variance(x, q, alpha);
        if (r.outside_range)
            err << "warning: q=" << q << " outside [x^0.45, x^0.95] for x=" << x << '\n';
        out << r.x << ',' << r.q << ',' << r.alpha << ',' << format_real(r.statistic) << ','
            << format_real(r.prediction) << ',' << format_real(r.ratio) << '\n';
    }
}

void run_ap_histogram(const Options& o, std::ostream& out)
{
    const ResidueHistogram h = residue_histogram(parse_count(o.x), parse_count(o.q));
    out << "residue,count\n";
    for (std::size_t l = 0; l < h.counts.size(); ++l) out << l << ',' << h.counts[l] << '\n';
}

void run_path(const Options& o, std::ostream& out)
{
    const u64 x = parse_count(o.x), H = parse_count(o.H), grid = parse_count(o.grid);
    const PathSeries s = (o.kind == "squarefull") ? squarefull_path(x, H, grid)
                                                  : prime_path(x, H, grid, o.literal);
    out << "t,value\n";
    for (u64 k = 0; k <= grid; ++k)
        out << format_real(static_cast<double>(k) / static_cast<double>(grid)) << ','
            << format_real(s.values[k]) << '\n';
}

void run_hurst(const Options& o, std::ostream& out)
{
    const auto rows = read_two_column_csv(o.input);
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& r : rows) values.push_back(r.second);
    out << "method,value,stderr\n";
    for (HurstMethod m : {HurstMethod::aggregated_variance, HurstMethod::rescaled_range}) {
        if (o.method != "both" && o.method != to_string(m)) continue;
        const HurstEstimate h = hurst_estimate(values, m);
        out << to_string(m) << ',' << format_real(h.value) << ',' << format_real(h.stderr_value) << '\n';
    }
}

void run_fit(const Options& o, std::ostream& out)
{
    std::vector<ScalePoint> pts;
    if (!o.input.empty()) {
        for (const auto& r : read_two_column_csv(o.input)) pts.push_back({r.first, r.second});
    } else {
        std::stringstream ss(o.points);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) throw UsageError("points must be scale:value pairs");
            pts.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
        }
    }
    const ExponentFit f = exponent_fit(pts);
    out << "slope,intercept,stderr\n"
        << format_real(f.slope) << ',' << format_real(f.intercept) << ',' << format_real(f.stderr_slope) << '\n';
}

void write_manifest(const std::string& path, const CLI::App& sub, double seconds, const std::string& output)
{
    nlohmann::ordered_json j;
    j["subcommand"] = sub.get_name();
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_name() == "--help") continue;
        const auto& res = opt->results();
        if (!res.empty())
            params[opt->get_name()] = res.size() == 1 ? nlohmann::ordered_json(res.front()) : nlohmann::ordered_json(res);
        else if (!opt->get_default_str().empty())
            params[opt->get_name()] = opt->get_default_str();
    }
    j["parameters"] = params;
    j["version"] = version;
    j["wall_time_seconds"] = seconds;
    j["output_checksum"] = checksum(output);
    std::ofstream(path) << j.dump(2) << '\n';
}

} // namespace

int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Square-full integer counts, variance statistics and partial-sum paths"};
    app.require_subcommand(1);
    app.fallthrough();
    app.footer("Exit codes: 0 ok, 2 usage, 3 domain, 4 capacity, 5 convergence.");

    unsigned threads = 0;
    std::string output_path;
    app.add_option("--threads", threads, "worker threads (default: hardware count)");
    app.add_option("--output", output_path, "write results to this file and <output>.manifest.json");

    Options o;
    std::map<std::string, std::function<void(std::ostream&, std::ostream&)>> runners;
    auto add = [&](const std::string& name, const std::string& help, auto run) {
        CLI::App* sub = app.add_subcommand(name, help);
        runners[name] = run;
        return sub;
    };

    auto* count = add("count", "number of square-full integers <= x",
                      [&](std::ostream& os, std::ostream&) { run_count(o, os); });
    count->add_option("--x", o.x, "upper limit")->required();

    auto* pairs = add("count-pairs", "number of pairs (a,b) with a^2 b^3 <= x",
                      [&](std::ostream& os, std::ostream&) { run_count_pairs(o, os); });
    pairs->add_option("--x", o.x, "upper limit")->required();

    auto* delta = add("delta", "exact count, main term and error term (CSV)",
                      [&](std::ostream& os, std::ostream&) { run_delta(o, os); });
    delta->add_option("--x", o.x, "upper limit, or comma-separated list")->required();
    delta->add_option("--kind", o.kind, "squarefull | pairs")
        ->check(CLI::IsMember({"squarefull", "pairs"}))
        ->default_str("squarefull");

    auto* window = add("window", "square-full integers in (x, x+H]",
                       [&](std::ostream& os, std::ostream&) { run_window(o, os); });
    window->add_option("--x", o.x, "window start (exclusive)")->required();
    window->add_option("--H", o.H, "window length")->required();
    window->add_flag("--list", o.list, "emit members as CSV n,a,b instead of the count");

    auto* constants = add("constants", "the limit constant C as JSON",
                          [&](std::ostream& os, std::ostream&) { run_constants(o, os); });
    constants->add_option("--P", o.P, "Euler product prime bound");
    constants->add_option("--Y", o.Y, "weight integral truncation");
    constants->add_option("--res", o.res, "quadrature panels per unit length");

    auto* vshort = add("variance-short", "short-interval variance statistic (CSV)",
                       [&](std::ostream& os, std::ostream& es) { run_variance_short(o, os, es); });
    vshort->add_option("--X", o.X, "scale X (interval [X, 2X])");
    vshort->add_option("--H", o.H, "window length (default round(X^H-exponent))");
    vshort->add_option("--H-exponent", o.H_exponent, "H = X^e when --H is absent")->capture_default_str();
    vshort->add_option("--strata", o.strata, "stratified midpoint strata")->capture_default_str();
    vshort->add_flag("--exact", o.exact, "integrate exactly over unit intervals (X <= 1e8)");
    vshort->add_option("--sweep", o.sweep, "comma-separated list of X");
    vshort->add_flag("--divisor23", o.divisor23, "use the (2,3)-divisor statistic (no H)");

    auto* vap = add("variance-ap", "arithmetic-progression variance statistic (CSV)",
                    [&](std::ostream& os, std::ostream& es) { run_variance_ap(o, os, es); });
    vap->add_option("--x", o.x, "scale x (square-full n in (x, 2x])");
    vap->add_option("--q", o.q, "odd prime modulus (default nearest prime to x^q-exponent)");
    vap->add_option("--q-exponent", o.q_exponent, "q exponent used without --q")->capture_default_str();
    vap->add_option("--alpha", o.alpha, "quadratic nonresidue (default: smallest)");
    vap->add_option("--sweep", o.sweep, "comma-separated list of x");

    auto* hist = add("ap-histogram", "residues mod q of square-full n in (x, 2x] (CSV)",
                     [&](std::ostream& os, std::ostream&) { run_ap_histogram(o, os); });
    hist->add_option("--x", o.x, "scale x")->required();
    hist->add_option("--q", o.q, "prime modulus")->required();

    auto* path = add("path", "normalized partial-sum path (CSV t,value)",
                     [&](std::ostream& os, std::ostream&) { run_path(o, os); });
    path->add_option("--kind", o.kind, "prime | squarefull")
        ->required()
        ->check(CLI::IsMember({"prime", "squarefull"}));
    path->add_option("--x", o.x, "window start")->required();
    path->add_option("--H", o.H, "window length")->required();
    path->add_option("--grid", o.grid, "number of t steps")->capture_default_str();
    path->add_flag("--literal", o.literal, "prime path with -1 per prime instead of per integer");

    auto* hurst = add("hurst", "Hurst exponent of a path CSV",
                      [&](std::ostream& os, std::ostream&) { run_hurst(o, os); });
    hurst->add_option("--input", o.input, "CSV with columns t,value")->required();
    hurst->add_option("--method", o.method, "aggregated_variance | rescaled_range | both")
        ->check(CLI::IsMember({"aggregated_variance", "rescaled_range", "both"}))
        ->capture_default_str();

    auto* fit = add("fit", "log-log least-squares slope",
                    [&](std::ostream& os, std::ostream&) { run_fit(o, os); });
    auto* fit_in = fit->add_option("--input", o.input, "CSV with columns scale,value");
    fit->add_option("--points", o.points, "scale:value pairs, comma-separated")->excludes(fit_in);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return exit_usage;
    }

    if (const char* cap = std::getenv("SQFULL_CAPACITY")) {
        try {
            limits().count_cap = parse_count(cap);
        } catch (const UsageError& e) {
            err << "error: SQFULL_CAPACITY: " << e.what() << '\n';
            return exit_usage;
        }
    }
    limits().threads = threads;

    CLI::App* chosen = app.get_subcommands().front();
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream buffer;
    try {
        if (chosen->get_name() == "variance-short" && o.X.empty() && o.sweep.empty())
            throw UsageError("variance-short needs --X or --sweep");
        if (chosen->get_name() == "variance-ap" && o.x.empty() && o.sweep.empty())
            throw UsageError("variance-ap needs --x or --sweep");
        if (chosen->get_name() == "fit" && o.input.empty() && o.points.empty())
            throw UsageError("fit needs --input or --points");
        runners.at(chosen->get_name())(buffer, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return exit_capacity;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << '\n';
        return exit_convergence;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string result = buffer.str();
    if (output_path.empty()) {
        out << result;
    } else {
        std::ofstream file(output_path);
        if (!file) {
            err << "usage error: cannot write " << output_path << '\n';
            return exit_usage;
        }
        file << result;
        write_manifest(output_path + ".manifest.json", *chosen, seconds, result);
    }
    return exit_ok;
}

} // namespace sqfull::cli
