#include "cli.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lrtriple/json_io.hpp"

namespace lrt::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string spec;
    std::string input;
    std::string output;
    std::string format = "json";
    std::string field = "q";
    std::string solver = "full";
    std::string check = "theorem";
    std::string family;
    std::string grid;
    long max_d = 24;
    unsigned jobs = 1;
};

// Exit status 2.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Exit status 1.
struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Outcome {
    Json json;
    std::string text;
    bool passed = true;
};

// "--field ratfunc:t,r0=1" is the field "ratfunc:t" plus spec parameters "r0=1".
std::pair<Field, std::string> split_field(const std::string& text) {
    const std::size_t comma = text.find(',');
    const Field f = parse_field(text.substr(0, comma));
    return {f, comma == std::string::npos ? std::string() : text.substr(comma + 1)};
}

std::string with_params(const std::string& spec, const std::string& extra) {
    if (extra.empty()) return spec;
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) return spec + ":" + extra;
    return spec + (colon + 1 == spec.size() ? "" : ",") + extra;
}

void check_max_d(std::size_t d, const RunConfig& cfg) {
    if (static_cast<long>(d) > cfg.max_d) {
        throw InvalidInput("d=" + std::to_string(d) + " exceeds --max-d " + std::to_string(cfg.max_d));
    }
}

FamilySpec load_spec(const RunConfig& cfg) {
    if (cfg.spec.empty()) throw InvalidInput(cfg.command + " needs a family spec such as nbg1:d=4");
    const auto [field, extra] = split_field(cfg.field);
    FamilySpec s = parse_spec(with_params(cfg.spec, extra), field);
    check_max_d(s.d, cfg);
    return s;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

struct LoadedTriple {
    LRTripleData data;
    std::optional<FamilySpec> spec;
};

LoadedTriple load_triple(const RunConfig& cfg) {
    if (cfg.spec.empty() == cfg.input.empty()) throw InvalidInput(cfg.command + " needs exactly one of a family spec or --input");
    if (!cfg.input.empty()) {
        Field f;
        const auto abc = triple_from_json(read_json_file(cfg.input), f);
        if (abc[0].rows() == 0) throw InvalidInput("empty matrices");
        check_max_d(abc[0].rows() - 1, cfg);
        return {analyze_triple(abc[0], abc[1], abc[2]), std::nullopt};
    }
    const FamilySpec s = load_spec(cfg);
    return {construct(s), s};
}

std::string text_matrix(const std::string& name, const Matrix& m) {
    std::ostringstream os;
    os << name << " =\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
        os << "]\n";
    }
    return os.str();
}

std::string text_vector(const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

std::string text_report(const VerificationReport& r) {
    std::ostringstream os;
    os << (r.passed() ? "PASS " : "FAIL ") << r.check << " " << r.spec << "\n";
    os << "  dimension " << r.dimension << ", expected " << r.expected << ", basis " << (r.basis_ok ? "ok" : "not ok") << "\n";
    for (const auto& [k, v] : r.values) os << "  " << k << " = " << v << "\n";
    for (const auto& [w, c] : r.word_coefficients) os << "  " << w << " -> " << text_vector(c) << "\n";
    for (const auto& f : r.failures) os << "  failure: " << f << "\n";
    return os.str();
}

Outcome report_outcome(const VerificationReport& r) { return {report_json(r), text_report(r), r.passed()}; }

Outcome cmd_build(const RunConfig& cfg) {
    const FamilySpec s = load_spec(cfg);
    const LRTripleData t = construct(s);
    Json j;
    j["spec"] = s.str();
    const Json body = triple_to_json(t.field, t.X);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    std::string text = s.display_name() + " over " + t.field.name() + "\n";
    text += text_matrix("A", t.A()) + text_matrix("B", t.B()) + text_matrix("C", t.C());
    return {j, text, true};
}

Outcome cmd_analyze(const RunConfig& cfg) {
    const LoadedTriple lt = load_triple(cfg);
    const LRTripleData& t = lt.data;
    Json j;
    if (lt.spec) j["spec"] = lt.spec->str();
    const Json body = triple_report_json(t);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    std::ostringstream os;
    os << "d = " << t.d << " over " << t.field.name() << (t.bipartite ? ", bipartite\n" : ", nonbipartite\n");
    const char* primes[3] = {"", "'", "''"};
    for (int k = 0; k < 3; ++k) {
        os << "phi" << primes[k] << " = " << text_vector(t.pairs[k].phi_values) << "\n";
        os << "a" << primes[k] << " = " << text_vector(t.trace[k]) << "\n";
        os << "alpha" << primes[k] << " = " << text_vector(t.alpha[k]) << "\n";
        os << "beta" << primes[k] << " = " << text_vector(t.beta[k]) << "\n";
    }
    return {j, os.str(), true};
}

Outcome cmd_tridiag(const RunConfig& cfg) {
    const LoadedTriple lt = load_triple(cfg);
    const TridiagSpace s = cfg.solver == "reduced" ? tridiagonal_space_reduced(lt.data) : tridiagonal_space(lt.data);
    Json j;
    if (lt.spec) j["spec"] = lt.spec->str();
    j["solver"] = cfg.solver;
    const Json body = space_json(s);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    std::string text = "dimension " + std::to_string(s.dimension) + "\n";
    for (std::size_t i = 0; i < s.basis.size(); ++i) text += text_matrix("X" + std::to_string(i), s.basis[i]);
    return {j, text, true};
}

VerificationReport run_check(const std::string& check, const FamilySpec& s) {
    if (check == "theorem") return verify_theorem(s);
    if (check == "appendix") return s.bipartite() ? verify_appendix2(s) : verify_appendix1(s);
    if (check == "proofs") return verify_proof_matrices(s);
    if (check == "vanishing") return verify_vanishing_lemma(s);
    throw InvalidInput("unknown check '" + check + "'");
}

// "d=2..6,q=2,3,5,7": keys in order, each with its list of values.
std::vector<std::pair<std::string, std::vector<std::string>>> parse_grid(const std::string& grid) {
    static const std::vector<std::string> keys{"d", "q", "t", "r0", "r1", "r2"};
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    std::stringstream ss(grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string value = item;
        const std::size_t eq = item.find('=');
        if (eq != std::string::npos) {
            const std::string key = item.substr(0, eq);
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw InvalidInput("unknown grid key '" + key + "'");
            for (const auto& kv : out) {
                if (kv.first == key) throw InvalidInput("grid key '" + key + "' appears twice");
            }
            out.emplace_back(key, std::vector<std::string>{});
            value = item.substr(eq + 1);
        }
        if (out.empty()) throw InvalidInput("grid must start with key=value, got '" + item + "'");
        if (value.empty()) throw InvalidInput("empty grid value for '" + out.back().first + "'");
        const std::size_t dots = value.find("..");
        if (dots != std::string::npos) {
            long lo = 0, hi = 0;
            try {
                std::size_t a = 0, b = 0;
                lo = std::stol(value.substr(0, dots), &a);
                hi = std::stol(value.substr(dots + 2), &b);
                if (a != dots || b != value.size() - dots - 2) throw std::invalid_argument("range");
            } catch (const std::logic_error&) {
                throw InvalidInput("bad grid range '" + value + "'");
            }
            if (hi < lo || hi - lo > 10000) throw InvalidInput("bad grid range '" + value + "'");
            for (long v = lo; v <= hi; ++v) out.back().second.push_back(std::to_string(v));
        } else {
            out.back().second.push_back(value);
        }
    }
    if (out.empty()) throw InvalidInput("empty grid");
    return out;
}

struct PointResult {
    std::string spec;
    std::string status;
    std::size_t dimension = 0;
    std::size_t expected = 0;
    std::vector<std::string> failures;
};

PointResult run_point(const RunConfig& cfg, const Field& field, const std::string& spec_text) {
    PointResult p;
    p.spec = spec_text;
    FamilySpec s;
    try {
        s = parse_spec(spec_text, field);
    } catch (const Error& e) {
        p.status = std::string("skipped: ") + e.what();
        return p;
    }
    p.spec = s.str();
    const auto violations = validate_spec(s);
    if (!violations.empty()) {
        p.status = "skipped: constraint " + violations.front();
        return p;
    }
    if (static_cast<long>(s.d) > cfg.max_d) {
        p.status = "skipped: d exceeds --max-d";
        return p;
    }
    try {
        const VerificationReport r = run_check(cfg.check, s);
        p.dimension = r.dimension;
        p.expected = r.expected;
        p.failures = r.failures;
        p.status = r.passed() ? "pass" : "fail";
    } catch (const InvalidSpec& e) {
        p.status = std::string("skipped: precondition ") + e.what();
    } catch (const Error& e) {
        p.status = "fail";
        p.failures.push_back(e.what());
    }
    return p;
}

Outcome cmd_sweep(const RunConfig& cfg) {
    if (cfg.check != "theorem" && cfg.check != "appendix" && cfg.check != "proofs" && cfg.check != "vanishing") {
        throw InvalidInput("unknown check '" + cfg.check + "'");
    }
    const auto [field, extra] = split_field(cfg.field);
    const auto grid = parse_grid(cfg.grid);
    std::vector<std::string> specs{""};
    for (const auto& [key, values] : grid) {
        std::vector<std::string> next;
        for (const auto& prefix : specs) {
            for (const auto& v : values) next.push_back(prefix + (prefix.empty() ? "" : ",") + key + "=" + v);
        }
        specs = std::move(next);
    }
    for (auto& s : specs) s = with_params(cfg.family + ":" + s, extra);

    std::vector<PointResult> results(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) results[i] = run_point(cfg, field, specs[i]);
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(cfg.jobs, specs.size());
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::size_t passed = 0, failed = 0, skipped = 0;
    Json points = Json::array();
    std::ostringstream os;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const PointResult& p = results[i];
        if (p.status == "pass") ++passed;
        else if (p.status == "fail") ++failed;
        else ++skipped;
        Json j;
        j["index"] = i;
        j["spec"] = p.spec;
        j["status"] = p.status;
        j["dimension"] = p.dimension;
        j["expected"] = p.expected;
        j["failures"] = p.failures;
        points.push_back(j);
        os << p.spec << ": " << p.status;
        if (p.status == "pass" || p.status == "fail") os << " (dimension " << p.dimension << ", expected " << p.expected << ")";
        os << "\n";
        for (const auto& f : p.failures) os << "  failure: " << f << "\n";
    }
    Json j;
    j["command"] = "sweep";
    j["family"] = cfg.family;
    j["grid"] = cfg.grid;
    j["field"] = cfg.field;
    j["check"] = cfg.check;
    j["points"] = points;
    j["summary"] = {{"total", results.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    j["passed"] = failed == 0;
    os << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return {j, os.str(), failed == 0};
}

Outcome dispatch(const RunConfig& cfg) {
    if (cfg.command == "build") return cmd_build(cfg);
    if (cfg.command == "analyze") return cmd_analyze(cfg);
    if (cfg.command == "tridiag") return cmd_tridiag(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (!cfg.input.empty()) throw InvalidInput(cfg.command + " takes a family spec, not --input");
    const FamilySpec s = load_spec(cfg);
    if (cfg.command == "verify-theorem") return report_outcome(run_check("theorem", s));
    if (cfg.command == "verify-appendix") return report_outcome(run_check("appendix", s));
    if (cfg.command == "verify-proofs") return report_outcome(run_check("proofs", s));
    throw InvalidInput("unknown command '" + cfg.command + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact computations with LR triples and their tridiagonal spaces", "lrtriple"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--field", cfg.field, "q, gf:P, ratfunc:VAR or ratfunc:VAR/gf:P, optionally followed by ,key=value spec parameters");
    app.add_option("--output,-o", cfg.output, "write to this file instead of stdout");
    app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--max-d", cfg.max_d, "largest accepted diameter")->check(CLI::Range(2L, 1000L));
    app.add_option("--jobs,-j", cfg.jobs, "worker threads for sweep")->check(CLI::Range(1u, 256u));

    auto* build = app.add_subcommand("build", "emit the matrices of a family instance");
    build->add_option("spec", cfg.spec, "family spec, e.g. nbg:d=3,q=2")->required();
    for (const char* name : {"analyze", "tridiag"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "analyze" ? "parameter arrays, trace and Toeplitz data"
                                                                            : "tridiagonal space");
        sub->add_option("spec", cfg.spec, "family spec");
        sub->add_option("--input,-i", cfg.input, "triple JSON {\"context\", \"A\", \"B\", \"C\"}");
        if (std::string(name) == "tridiag") {
            sub->add_option("--solver", cfg.solver, "full or reduced")->check(CLI::IsMember({"full", "reduced"}));
        }
    }
    for (const char* name : {"verify-theorem", "verify-appendix", "verify-proofs"}) {
        auto* sub = app.add_subcommand(name, "verification report");
        sub->add_option("spec", cfg.spec, "family spec")->required();
        sub->add_option("--input,-i", cfg.input, "not supported; verification needs a family spec");
    }
    auto* sweep = app.add_subcommand("sweep", "run a check over a parameter grid");
    sweep->add_option("family", cfg.family, "nbg, nbg1, nbng, bdt, bd1 or b2")->required();
    sweep->add_option("grid", cfg.grid, "e.g. d=2..6,q=2,3,5,7")->required();
    sweep->add_option("--check", cfg.check, "theorem, appendix, proofs or vanishing");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    Outcome result;
    try {
        result = dispatch(cfg);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailed& e) {
        err << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const ConstructionInconsistent& e) {
        err << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const JInconsistent& e) {
        err << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (position " << e.position() << ")\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string payload = cfg.format == "text" ? result.text : result.json.dump(2) + "\n";
    if (cfg.output.empty()) {
        out << payload;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            err << "error: cannot write " << cfg.output << "\n";
            return 2;
        }
        f << payload;
    }
    return result.passed ? 0 : 1;
}

}  // namespace lrt::cli
