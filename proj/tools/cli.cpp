#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "latlaw/checks.hpp"
#include "latlaw/errors.hpp"
#include "latlaw/laws.hpp"
#include "latlaw/sampling.hpp"
#include "latlaw/text.hpp"

namespace latlaw::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Removes `key=value` from the token list and returns the value.
std::optional<std::string> take_key(std::vector<std::string>& tokens, std::string_view key) {
    for (auto it = tokens.begin(); it != tokens.end(); ++it) {
        if (it->size() > key.size() && it->compare(0, key.size(), key) == 0 && (*it)[key.size()] == '=') {
            std::string value = it->substr(key.size() + 1);
            tokens.erase(it);
            return value;
        }
    }
    return std::nullopt;
}

double to_real(const std::string& key, const std::string& value) {
    auto v = parse_double(value);
    if (!v) throw ParameterError("malformed number in '" + key + "=" + value + "'");
    return *v;
}

unsigned long long to_count(const std::string& key, const std::string& value) {
    auto v = parse_unsigned(value);
    if (!v) throw ParameterError("expected a nonnegative integer in '" + key + "=" + value + "'");
    return *v;
}

std::vector<double> to_real_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream in(value);
    for (std::string item; std::getline(in, item, ',');) out.push_back(to_real(key, item));
    if (out.empty()) throw ParameterError("empty list in '" + key + "='");
    return out;
}

std::size_t order_from_env() {
    if (const char* env = std::getenv(kOrderEnv)) {
        auto v = parse_unsigned(env);
        if (!v || *v == 0) throw ParameterError(std::string(kOrderEnv) + " must be a positive integer");
        return static_cast<std::size_t>(*v);
    }
    return kDefaultOrder;
}

bool family_uses_n(const std::string& family) { return family == "binomial" || family == "alpha-binomial"; }

/// Truncation order: --order flag, then order=/N= keys, then n= for
/// families without a count parameter, then the environment.
std::size_t resolve_order(std::vector<std::string>& tokens, std::size_t flag_order) {
    std::optional<std::string> key = take_key(tokens, "order");
    if (auto alt = take_key(tokens, "N")) key = alt;
    if (!key && !tokens.empty() && !family_uses_n(tokens.front())) key = take_key(tokens, "n");
    if (flag_order > 0) return flag_order;
    if (key) {
        const auto v = to_count("order", *key);
        if (v == 0) throw ParameterError("truncation order must be positive");
        return static_cast<std::size_t>(v);
    }
    return order_from_env();
}

// ---------------------------------------------------------------------------
// pmf

int cmd_pmf(std::vector<std::string> tokens, std::size_t flag_order, const std::string& format, std::ostream& out,
            std::ostream& err) {
    const std::size_t order = resolve_order(tokens, flag_order);
    const LawSpec law = parse_law(std::span<const std::string>(tokens));
    LawPmf result;
    try {
        result = pmf(law, order);
    } catch (const NotAValidPMF& e) {
        err << "NotAValidPMF: " << e.what() << '\n';
        return kExitFail;
    }
    if (format == "json") {
        Json j;
        j["law"] = format_law(law);
        j["order"] = order;
        j["pmf"] = Json::array();
        for (double p : result.pmf.coeffs()) j["pmf"].push_back(p);
        j["tail_mass"] = result.tail_bound;
        out << j.dump(2) << '\n';
    } else {
        out << "k,p_k\n";
        for (std::size_t k = 0; k < result.pmf.size(); ++k) out << k << ',' << format_double(result.pmf[k]) << '\n';
        out << "tail," << format_double(result.tail_bound) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

std::vector<double> parse_s_grid(std::vector<std::string>& tokens) {
    auto list = take_key(tokens, "s");
    auto range = take_key(tokens, "grid");
    if (list && range) throw ParameterError("give either s= or grid=, not both");
    std::vector<double> grid;
    if (list) {
        grid = to_real_list("s", *list);
    } else if (range) {
        // lo:hi:count
        std::vector<std::string> parts;
        std::stringstream in(*range);
        for (std::string item; std::getline(in, item, ':');) parts.push_back(item);
        if (parts.size() != 3) throw ParameterError("grid= expects lo:hi:count, got '" + *range + "'");
        const auto count = to_count("grid", parts[2]);
        if (count < 1 || count > 1000000) throw ParameterError("grid= count must lie in [1, 1e6]");
        grid = linear_grid(to_real("grid", parts[0]), to_real("grid", parts[1]), static_cast<std::size_t>(count));
    } else {
        grid = default_s_grid();
    }
    for (double s : grid) {
        if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("eval: s=" + format_double(s) + " outside [0, 1]");
    }
    return grid;
}

int cmd_eval(std::vector<std::string> tokens, std::size_t flag_order, const std::string& format, std::ostream& out) {
    const std::vector<double> grid = parse_s_grid(tokens);
    const std::size_t order = resolve_order(tokens, flag_order);
    const LawSpec law = parse_law(std::span<const std::string>(tokens));
    const LawPmf series = pmf_report(law, order);
    if (format == "json") {
        Json j;
        j["law"] = format_law(law);
        j["order"] = order;
        j["tail_bound"] = series.tail_bound;
        j["rows"] = Json::array();
        for (double s : grid) {
            j["rows"].push_back({{"s", s}, {"pgf", pgf_eval(law, s)}, {"series", eval(series.pmf, s)}});
        }
        out << j.dump(2) << '\n';
    } else {
        out << "s,pgf,series\n";
        for (double s : grid) {
            out << format_double(s) << ',' << format_double(pgf_eval(law, s)) << ','
                << format_double(eval(series.pmf, s)) << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(std::vector<std::string> tokens, std::size_t flag_order, const std::string& format,
               const std::string& output, std::ostream& out, std::ostream& err) {
    const auto count_key = take_key(tokens, "count");
    const auto seed_key = take_key(tokens, "seed");
    const auto stream_key = take_key(tokens, "stream");
    if (!count_key) throw ParameterError("sample requires count=");
    if (!seed_key) throw ParameterError("sample requires seed=");
    const auto count = to_count("count", *count_key);
    if (count > 100000000ULL) throw ParameterError("count= is limited to 1e8");
    const RngState state{to_count("seed", *seed_key), stream_key ? to_count("stream", *stream_key) : 0};
    const std::size_t order = resolve_order(tokens, flag_order);
    const LawSpec law = parse_law(std::span<const std::string>(tokens));

    SamplerOptions options;
    options.order = std::max<std::size_t>(order, 4096);
    const LawSampler sampler(law, options);
    Rng rng(state);
    std::vector<std::uint64_t> draws(count);
    for (auto& x : draws) x = sampler(rng);

    // Empirical vs series summary, when the series is a pmf at this order.
    Json summary;
    summary["count"] = count;
    summary["order"] = order;
    const LawPmf series = pmf_report(law, order);
    if (series.valid() && count > 0) {
        const EmpiricalPmf emp = empirical_pmf(draws, order);
        summary["series_tail"] = series.tail_bound;
        summary["empirical_tail"] = emp.tail();
        summary["tv"] = tv_distance(emp.pmf, emp.tail(), series.pmf, series.tail_bound);
    } else {
        summary["tv"] = nullptr;
    }

    std::ofstream file;
    if (!output.empty()) {
        file.open(output);
        if (!file) throw ParameterError("cannot open output file '" + output + "'");
    }
    std::ostream& sink = output.empty() ? out : static_cast<std::ostream&>(file);
    std::ostream& summary_sink = output.empty() ? err : out;

    if (format == "json") {
        Json j;
        j["law"] = format_law(law);
        j["seed"] = state.seed;
        j["stream"] = state.stream;
        j["rng"] = "mt19937_64/seed_seq/v" + std::to_string(kRngVersion);
        j["samples"] = draws;
        j["summary"] = summary;
        sink << j.dump() << '\n';
        if (!output.empty()) out << summary.dump() << '\n';
    } else {
        if (format == "csv") {
            sink << "# " << format_law(law) << " seed=" << state.seed << " stream=" << state.stream << '\n';
            sink << "x\n";
        }
        for (auto x : draws) sink << x << '\n';
        summary_sink << summary.dump() << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

class SuiteArgs {
public:
    explicit SuiteArgs(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

    double real(const std::string& key, double fallback) {
        auto v = take_key(tokens_, key);
        return v ? to_real(key, *v) : fallback;
    }
    std::optional<double> maybe_real(const std::string& key) {
        auto v = take_key(tokens_, key);
        if (!v) return std::nullopt;
        return to_real(key, *v);
    }
    unsigned count(const std::string& key, unsigned fallback) {
        auto v = take_key(tokens_, key);
        if (!v) return fallback;
        const auto n = to_count(key, *v);
        if (n > 100000000ULL) throw ParameterError("'" + key + "' too large");
        return static_cast<unsigned>(n);
    }
    std::vector<double> reals(const std::string& key, std::vector<double> fallback) {
        auto v = take_key(tokens_, key);
        return v ? to_real_list(key, *v) : fallback;
    }
    /// Remaining tokens as a law spec, or the fallback if none remain.
    LawSpec law(const std::string& fallback) {
        if (tokens_.empty()) return parse_law(fallback);
        LawSpec law = parse_law(std::span<const std::string>(tokens_));
        tokens_.clear();
        return law;
    }
    void finish() const {
        if (!tokens_.empty()) throw ParameterError("unknown parameter '" + tokens_.front() + "'");
    }

private:
    std::vector<std::string> tokens_;
};

using SuiteFn = std::function<CheckReport(SuiteArgs&)>;

const std::map<std::string, SuiteFn>& suites() {
    static const std::map<std::string, SuiteFn> table = {
        {"thm2_1",
         [](SuiteArgs& a) {
             const double c = a.real("c", 0.5);
             const unsigned order = a.count("order", kDefaultOrder);
             return thm2_1_check(a.law("alpha-poisson lambda=1 alpha=0.6"), c, {}, order);
         }},
        {"thm3_1",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.7);
             return thm3_1_check(lambda, alpha, a.real("c", 0.5));
         }},
        {"thm4_1",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.6);
             std::vector<unsigned> ns;
             for (double n : a.reals("ns", {1, 10, 100, 1000})) {
                 if (!(n >= 1.0) || n != std::floor(n)) throw ParameterError("ns= entries must be positive integers");
                 ns.push_back(static_cast<unsigned>(n));
             }
             return thm4_1_convergence(lambda, alpha, ns);
         }},
        {"thm4_2",
         [](SuiteArgs& a) {
             const double alpha = a.real("alpha", 0.5);
             const double A = a.real("A", 0.4);
             const unsigned n = a.count("n", 2);
             if (n < 2) throw ParameterError("thm4_2: n must be >= 2");
             const PsiFunction psi(std::pow(1.0 / n, 1.0 / alpha), alpha, A);
             return thm4_2_check(psi, n, a.real("b", psi.b()));
         }},
        {"thm4_4",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.5);
             const unsigned n = a.count("n", 2);
             return thm4_4_check(lambda, alpha, n, a.maybe_real("b"));
         }},
        {"thm4_5",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.7);
             const unsigned m = a.count("m", 2);
             return thm4_5_check(lambda, alpha, m, a.count("n", 3));
         }},
        {"thm5_1",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.5);
             const double A = a.real("A", 0.4);
             const double p = a.real("p", 0.5);
             const PsiFunction psi(std::pow(p, 1.0 / alpha), alpha, A, lambda);
             return thm5_1_check(psi, p, a.maybe_real("b"));
         }},
        {"thm5_5",
         [](SuiteArgs& a) {
             const double index = a.real("index", 1.0);
             const auto ps = a.reals("ps", {0.5, 0.1, 0.01, 0.001});
             const auto limit = a.maybe_real("limit");
             return thm5_5_convergence(a.law("poisson lambda=1"), index, ps, {}, 5e-3, limit);
         }},
        {"thm5_6",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.5);
             const double p = a.real("p", 0.25);
             return thm5_6_check(lambda, alpha, p, a.maybe_real("b"));
         }},
        {"thm5_7",
         [](SuiteArgs& a) {
             const double lambda = a.real("lambda", 1.0);
             const double alpha = a.real("alpha", 0.5);
             const double p = a.real("p", 0.2);
             const double p0 = a.real("p0", 0.8);
             return thm5_7_check(lambda, alpha, p, p0, a.maybe_real("b"));
         }},
        {"cm",
         [](SuiteArgs& a) {
             const double s_max = a.real("smax", 10.0);
             const unsigned depth = a.count("depth", 6);
             const LawSpec law = a.law("geometric0 lambda=1");
             CheckReport r = cm_grid_check(lt_from_pgf(pgf_handle(law)), s_max, static_cast<int>(depth));
             r.note = format_law(law) + ": " + r.note;
             return r;
         }},
        {"classL",
         [](SuiteArgs& a) {
             const auto alphas = a.reals("alphas", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
             const unsigned order = a.count("order", kDefaultOrder);
             return discrete_class_L_check(a.law("dml lambda=1 alpha=0.6"), alphas, order);
         }},
        {"semistable",
         [](SuiteArgs& a) {
             const double alpha = a.real("alpha", 0.5);
             const double A = a.real("A", 0.3);
             const double b = a.real("b", 0.25);
             PsiFunction psi(b, alpha, A);
             if (auto k = a.maybe_real("k")) psi = psi.detuned(*k);
             return semi_stable_residual(psi);
         }},
        {"two_scale",
         [](SuiteArgs& a) {
             const double alpha = a.real("alpha", 0.5);
             const double A = a.real("A", 0.4);
             const unsigned n1 = a.count("n1", 2);
             return two_scale_check(alpha, A, n1, a.count("n2", 3));
         }},
    };
    return table;
}

int cmd_verify(std::vector<std::string> tokens, const std::string& format, bool details, std::ostream& out) {
    if (tokens.empty()) throw ParameterError("verify: missing suite name");
    const std::string name = tokens.front();
    tokens.erase(tokens.begin());

    std::vector<CheckReport> reports;
    if (name == "all") {
        if (!tokens.empty()) throw ParameterError("verify all takes no parameters, got '" + tokens.front() + "'");
        for (const auto& [suite, fn] : suites()) {
            SuiteArgs args({});
            reports.push_back(fn(args));
        }
    } else {
        auto it = suites().find(name);
        if (it == suites().end()) {
            std::string known;
            for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
            throw ParameterError("unknown suite '" + name + "' (known: " + known + ", all)");
        }
        SuiteArgs args(std::move(tokens));
        reports.push_back(it->second(args));
        args.finish();
    }
    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });

    if (format == "text") {
        for (const auto& r : reports) out << to_text(r);
    } else if (name == "all") {
        Json j;
        j["verdict"] = all_pass ? "pass" : "fail";
        j["reports"] = Json::array();
        for (const auto& r : reports) j["reports"].push_back(to_json(r, details));
        out << j.dump(2) << '\n';
    } else {
        out << to_json(reports.front(), details).dump(2) << '\n';
    }
    return all_pass ? kExitOk : kExitFail;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suites()) names.push_back(name);
    return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete analogues of Laplace-transform laws on the non-negative lattice", "latlaw"};
    app.require_subcommand(1);

    std::vector<std::string> tokens;
    std::size_t order = 0;
    std::string format;
    std::string output;
    bool no_details = false;

    auto* pmf_cmd = app.add_subcommand("pmf", "Print p_k for k = 0..N plus the untracked tail mass");
    pmf_cmd->add_option("law", tokens, "<family> key=value ...")->required();
    pmf_cmd->add_option("--order", order, "Truncation order (overrides n=/order= and $LATLAW_ORDER)");
    pmf_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the PGF on a grid (s=a,b,c or grid=lo:hi:count)");
    eval_cmd->add_option("law", tokens, "<family> key=value ... [s=...|grid=...]")->required();
    eval_cmd->add_option("--order", order, "Truncation order of the series column");
    eval_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* sample_cmd = app.add_subcommand("sample", "Draw count=K variates with seed=S");
    sample_cmd->add_option("law", tokens, "<family> key=value ... count=K seed=S [stream=T]")->required();
    sample_cmd->add_option("--order", order, "Truncation order for the summary");
    sample_cmd->add_option("--format", format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    sample_cmd->add_option("-o,--output", output, "Write samples to a file; summary goes to stdout");

    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite, or all of them");
    verify_cmd->add_option("suite", tokens, "<suite> [key=value ...]")->required();
    verify_cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    verify_cmd->add_flag("--no-details", no_details, "Omit per-point tables from JSON");

    std::vector<std::string> argv_storage{"latlaw"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        if (app.get_subcommands().empty()) err << app.help();
        return kExitUsage;
    }

    try {
        if (pmf_cmd->parsed()) return cmd_pmf(tokens, order, format.empty() ? "csv" : format, out, err);
        if (eval_cmd->parsed()) return cmd_eval(tokens, order, format.empty() ? "csv" : format, out);
        if (sample_cmd->parsed()) {
            return cmd_sample(tokens, order, format.empty() ? "text" : format, output, out, err);
        }
        if (verify_cmd->parsed()) return cmd_verify(tokens, format.empty() ? "json" : format, !no_details, out);
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TailTooHeavy& e) {
        err << "TailTooHeavy: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NotAValidPMF& e) {
        err << "NotAValidPMF: " << e.what() << '\n';
        return kExitFail;
    } catch (const FactorizationInvalid& e) {
        err << "FactorizationInvalid: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace latlaw::cli
