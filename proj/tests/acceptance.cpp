// One PASS/FAIL line per acceptance criterion. Every comparison is exact;
// the only tolerances are the wall-clock budgets below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lrtriple/tridiag.hpp"

using namespace lrt;

namespace {

constexpr double kInstanceSeconds = 5.0;
constexpr double kIdempotentSeconds = 10.0;
constexpr double kSuiteSeconds = 120.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> failures;
    std::string detail;
    std::size_t checks = 0;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

struct Instance {
    std::string spec;
    Field field;
};

const Field Q = Field::rationals();
const Field GF = Field::prime(101);

std::vector<Instance> nonbipartite_instances(const Field& f, const std::string& half) {
    std::vector<Instance> out{{"nbg1:d=2", f}, {"nbg:d=2,q=2", f}, {"nbg:d=2,q=3", f}};
    for (int d = 3; d <= 6; ++d) {
        for (const std::string& q : std::vector<std::string>{"2", "3", half}) out.push_back({"nbg:d=" + std::to_string(d) + ",q=" + q, f});
    }
    for (int d = 3; d <= 6; ++d) out.push_back({"nbg1:d=" + std::to_string(d), f});
    for (int d : {4, 6}) {
        for (const char* t : {"2", "3"}) out.push_back({"nbng:d=" + std::to_string(d) + ",t=" + t, f});
    }
    return out;
}

std::vector<Instance> bipartite_instances(const Field& f) {
    std::vector<Instance> out{{"b2:r0=1,r1=1,r2=-1", f}, {"b2:r0=2,r1=3", f}, {"b2:r0=-1,r1=1/2", f}};
    for (int d : {4, 6}) {
        const std::string ds = std::to_string(d);
        out.push_back({"bdt:d=" + ds + ",t=2,r0=1,r1=1", f});
        out.push_back({"bdt:d=" + ds + ",t=3,r0=2,r1=-1", f});
        out.push_back({"bd1:d=" + ds, f});
        out.push_back({"bd1:d=" + ds + ",r0=2,r1=3", f});
    }
    return out;
}

std::vector<Instance> all_instances() {
    auto a = nonbipartite_instances(Q, "1/2");
    auto b = bipartite_instances(Q);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string name_of(const Instance& in) { return in.spec + " over " + in.field.name(); }

// Runs body, turning exceptions into failures.
void guarded(Criterion& c, const std::string& what, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        c.expect(false, what + ": " + e.what());
    }
}

void dimension_criterion(Criterion& c, const std::vector<Instance>& nb, const std::vector<Instance>& bp, bool basis_too) {
    double worst = 0;
    for (const auto& in : nb) {
        guarded(c, name_of(in), [&] {
            const auto t0 = Clock::now();
            const VerificationReport r = verify_theorem_nonbipartite(parse_spec(in.spec, in.field));
            const double s = seconds_since(t0);
            worst = std::max(worst, s);
            const std::size_t want = parse_spec(in.spec, in.field).d == 2 ? 6 : 7;
            c.expect(r.dimension == want, name_of(in) + ": dim " + std::to_string(r.dimension) + " != " + std::to_string(want));
            c.expect(s < kInstanceSeconds, name_of(in) + ": took " + std::to_string(s) + " s");
            if (basis_too) c.expect(r.passed() && r.basis_ok, name_of(in) + ": " + (r.failures.empty() ? "basis" : r.failures[0]));
        });
    }
    for (const auto& in : bp) {
        guarded(c, name_of(in), [&] {
            const auto t0 = Clock::now();
            const VerificationReport r = verify_theorem_bipartite(parse_spec(in.spec, in.field));
            worst = std::max(worst, seconds_since(t0));
            const std::size_t want = parse_spec(in.spec, in.field).d == 2 ? 6 : 8;
            c.expect(r.dimension == want, name_of(in) + ": dim " + std::to_string(r.dimension) + " != " + std::to_string(want));
            const std::string half = std::to_string(want / 2);
            c.expect(r.values.size() >= 2 && r.values[0].second == half && r.values[1].second == half,
                     name_of(in) + ": split is not " + half + " + " + half);
            const bool split_ok = std::none_of(r.failures.begin(), r.failures.end(), [](const std::string& f) {
                return f.find("XJ") != std::string::npos || f.find("X(I-J)") != std::string::npos;
            });
            c.expect(split_ok, name_of(in) + ": direct-sum decomposition fails");
            if (basis_too) c.expect(r.passed() && r.basis_ok, name_of(in) + ": " + (r.failures.empty() ? "basis" : r.failures[0]));
        });
    }
    c.detail = std::to_string(nb.size() + bp.size()) + " instances, slowest " + std::to_string(worst) + " s";
}

void toeplitz_criterion(Criterion& c) {
    for (const auto& in : all_instances()) {
        guarded(c, name_of(in), [&] {
            const FamilySpec s = parse_spec(in.spec, in.field);
            const LRTripleData t = construct(s);
            const ToeplitzData td = toeplitz_data(t);
            for (int k = 0; k < 3; ++k) {
                c.expect(td.alpha[k][0].is_one() && td.beta[k][0].is_one(), name_of(in) + ": alpha_0 or beta_0 != 1");
                if (t.d >= 1) c.expect(td.beta[k][1] == -td.alpha[k][1], name_of(in) + ": beta_1 != -alpha_1");
                for (std::size_t i = 0; i <= t.d; ++i) {
                    c.expect(td.alpha[k][i] == closed_form_alpha(s, k, i),
                             name_of(in) + ": alpha_" + std::to_string(i) + " differs from the closed form");
                    if (has_closed_form_beta(s)) {
                        c.expect(td.beta[k][i] == closed_form_beta(s, k, i),
                                 name_of(in) + ": beta_" + std::to_string(i) + " differs from the closed form");
                    }
                }
            }
        });
    }
}

void idempotent_criterion(Criterion& c) {
    const auto t0 = Clock::now();
    std::size_t entries = 0;
    for (const char* spec : {"nbg:d=3,q=2", "bdt:d=4,t=2,r0=1,r1=1,r2=-1/2"}) {
        guarded(c, spec, [&] {
            const LRTripleData t = construct(parse_spec(spec, Q));
            for (int k = 0; k < 3; ++k) {
                for (const auto& b : all_basis_types()) {
                    for (std::size_t r = 0; r <= t.d; ++r) {
                        c.expect(idempotent_entry_check(t, k, b, r),
                                 std::string(spec) + ": E^(" + std::to_string(k) + ")_" + std::to_string(r) + " in " + b.name());
                        entries += (t.d + 1) * (t.d + 1);
                    }
                }
            }
        });
    }
    const double s = seconds_since(t0);
    c.expect(s < kIdempotentSeconds, "took " + std::to_string(s) + " s");
    c.detail = std::to_string(entries) + " entries in " + std::to_string(s) + " s";
}

void report_criterion(Criterion& c, const std::vector<Instance>& ins,
                      const std::function<VerificationReport(const FamilySpec&)>& verify) {
    for (const auto& in : ins) {
        guarded(c, name_of(in), [&] {
            const VerificationReport r = verify(parse_spec(in.spec, in.field));
            c.expect(r.passed(), name_of(in) + ": " + (r.failures.empty() ? "" : r.failures[0]));
        });
    }
    c.detail = std::to_string(ins.size()) + " instances";
}

void determinant_criterion(Criterion& c) {
    const Field Fq = Field::rational_functions(Q, "q");
    for (int d = 3; d <= 5; ++d) {
        guarded(c, "nbg1", [&] {
            const FamilySpec s = parse_spec("nbg1:d=" + std::to_string(d), Q);
            const Element det = determinant(proof_matrix_nonbipartite(s, construct(s)));
            c.expect(det == Q.from_int(32 * d * (d - 1)), s.str() + ": det M = " + det.str());
        });
    }
    guarded(c, "nbg:d=3,q=q", [&] {
        const FamilySpec s = parse_spec("nbg:d=3,q=q", Fq);
        const Element det = determinant(proof_matrix_nonbipartite(s, construct(s)));
        const Element q = Fq.variable(), one = Fq.one();
        const long d = 3;
        const Element table = (q * q - one).pow(2) * (q.pow(d - 1) - one) * (q.pow(d) - one) * (q.pow(d + 1) + one).pow(3) /
                              (q.pow(2 * d + 3) * (q - one).pow(4));
        c.expect(det == table, "NBG_3(Q(q);q): det M = " + det.str());
    });
    guarded(c, "nbg1:d=2", [&] {
        const FamilySpec s = parse_spec("nbg1:d=2", Q);
        const Element det = determinant(proof_matrix_nonbipartite(s, construct(s)));
        c.expect(det == Q.from_int(32), "NBG_2(Q;1): det M' = " + det.str());
    });
    std::vector<Instance> proofs{{"nbg1:d=2", Q}, {"nbg1:d=3", Q}, {"nbg1:d=4", Q}, {"nbg1:d=5", Q}, {"nbg:d=3,q=q", Fq}};
    for (const char* s : {"bdt:d=4,t=2,r0=1,r1=1", "bdt:d=6,t=3,r0=2,r1=-1", "bd1:d=4,r0=2,r1=3", "bd1:d=6"}) {
        proofs.push_back({s, Q});
    }
    const std::size_t before = c.checks;
    report_criterion(c, proofs, verify_proof_matrices);
    c.detail = std::to_string(c.checks - before + 5) + " determinants";
}

void property_criterion(Criterion& c) {
    const auto t0 = Clock::now();
    std::size_t instances = 0;
    auto ins = all_instances();
    const auto gf = bipartite_instances(GF);
    ins.insert(ins.end(), gf.begin(), gf.end());
    for (const auto& in : ins) {
        guarded(c, name_of(in), [&] {
            ++instances;
            const FamilySpec s = parse_spec(in.spec, in.field);
            const LRTripleData t = construct(s);
            const std::string n = name_of(in);
            const long d = static_cast<long>(t.d);
            for (int k = 0; k < 3; ++k) {
                Matrix sum(t.field, t.d + 1, t.d + 1);
                for (std::size_t r = 0; r <= t.d; ++r) sum += t.E(k, r);
                c.expect(sum == t.I(), n + ": idempotents of pair " + std::to_string(k) + " do not sum to I");
            }
            for (long i = 2; i <= d - 1; ++i) {
                for (int k = 0; k < 3; ++k) {
                    const Element lhs = t.phi(k + 1, i) / t.phi(k + 2, d - i + 1);
                    const Element rhs = t.alpha_at(k + 1, 0) * t.beta_at(k + 1, 2) * t.phi(k, i - 1) +
                                        t.alpha_at(k + 1, 1) * t.beta_at(k + 1, 1) * t.phi(k, i) +
                                        t.alpha_at(k + 1, 2) * t.beta_at(k + 1, 0) * t.phi(k, i + 1);
                    c.expect(lhs == rhs, n + ": parameter identity fails at i=" + std::to_string(i));
                }
            }
            const TridiagSpace x = tridiagonal_space(t);
            const TridiagSpace xr = tridiagonal_space_reduced(t);
            c.expect(x.basis == xr.basis, n + ": full and reduced solvers disagree");
            for (const auto& w : contained_words()) c.expect(membership(x, word(t, w)), n + ": " + w + " not in X");
            if (t.d == 2) c.expect(x.dimension <= 6, n + ": dim X > 6 for d = 2");
            if (!t.bipartite) {
                for (long i = 0; i <= d; ++i) c.expect(!t.alpha_at(0, i).is_zero(), n + ": alpha_i = 0");
                for (long i = 1; i <= d - 1; ++i) {
                    c.expect(t.alpha_at(0, i) * t.alpha_at(0, i) * t.phi(0, i) !=
                                 t.alpha_at(0, i - 1) * t.alpha_at(0, i + 1) * t.phi(0, i + 1),
                             n + ": alpha_i^2 phi_i = alpha_{i-1} alpha_{i+1} phi_{i+1} at i=" + std::to_string(i));
                }
                const LRTripleData sc = scale_triple(t, t.field.from_int(2), t.field.from_int(-3), t.field.from_int(5));
                c.expect(same_subspace(tridiagonal_space(sc).basis, x.basis), n + ": scaling changes X");
                const VerificationReport v = verify_vanishing_lemma(s);
                c.expect(v.passed(), n + ": " + (v.failures.empty() ? "" : v.failures[0]));
                return;
            }
            const Matrix& J = *t.J;
            const Matrix IJ = t.I() - J;
            for (int k = 0; k < 3; ++k) {
                Matrix even(t.field, t.d + 1, t.d + 1);
                for (std::size_t r = 0; r <= t.d; r += 2) even += t.E(k, r);
                c.expect(even == J, n + ": the three expressions of J differ");
                c.expect(t.beta_at(k, 2) == -t.alpha_at(k, 2), n + ": beta_2 != -alpha_2");
                for (long i = 2; i <= d - 1; ++i) c.expect(t.phi(k, i - 1) != t.phi(k, i + 1), n + ": phi_{i-1} = phi_{i+1}");
            }
            for (long i = 1; 2 * i + 2 <= d; ++i) {
                c.expect(t.alpha_at(0, 2 * i) * t.alpha_at(0, 2 * i) != t.alpha_at(0, 2 * i - 2) * t.alpha_at(0, 2 * i + 2),
                         n + ": alpha_{2i}^2 = alpha_{2i-2} alpha_{2i+2}");
                c.expect(t.beta_at(0, 2 * i) * t.beta_at(0, 2 * i) != t.beta_at(0, 2 * i - 2) * t.beta_at(0, 2 * i + 2),
                         n + ": beta_{2i}^2 = beta_{2i-2} beta_{2i+2}");
            }
            const OutInSplit oi = out_in_split(t);
            for (int k = 0; k < 3; ++k) {
                const Matrix& X = t.X[k];
                c.expect(oi.out[k] == X * J && oi.out[k] == IJ * X, n + ": X_out != XJ = (I-J)X");
                c.expect(oi.in[k] == J * X && oi.in[k] == X * IJ, n + ": X_in != JX = X(I-J)");
            }
            const Field& f = t.field;
            const LRTripleData bs = biassociate(t, f.from_int(2), f.from_int(-3), f.from_int(7));
            c.expect(same_subspace(tridiagonal_space(bs).basis, x.basis), n + ": biassociation changes X");
            c.expect(proportional(t.A() * t.B() * t.C() * J, bs.A() * bs.B() * bs.C() * J), n + ": A'B'C'J not a multiple of ABCJ");
            c.expect(proportional(t.A() * t.C() * t.B() * J, bs.A() * bs.C() * bs.B() * J), n + ": A'C'B'J not a multiple of ACBJ");
            for (const auto& m : x.basis) {
                c.expect(membership(x, m * J) && membership(x, m * IJ), n + ": XJ or X(I-J) leaves X");
            }
        });
    }
    const double s = seconds_since(t0);
    c.detail = std::to_string(instances) + " instances in " + std::to_string(s) + " s";
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const Field Fq = Field::rational_functions(Q, "q");
    const Field Ft = Field::rational_functions(Q, "t");
    const Field Fr = Field::rational_functions(Q, "r");
    std::vector<Criterion> cs;
    auto add = [&](int n, const std::string& title, const std::function<void(Criterion&)>& body) {
        Criterion c{n, title, {}, {}, 0};
        body(c);
        cs.push_back(std::move(c));
    };
    add(1, "dimension theorem, nonbipartite", [](Criterion& c) { dimension_criterion(c, nonbipartite_instances(Q, "1/2"), {}, false); });
    add(2, "dimension theorem, bipartite", [](Criterion& c) { dimension_criterion(c, {}, bipartite_instances(Q), false); });
    add(3, "basis claims", [](Criterion& c) {
        dimension_criterion(c, nonbipartite_instances(Q, "1/2"), bipartite_instances(Q), true);
    });
    add(4, "prime-field replication over GF(101)", [](Criterion& c) {
        const auto nb = nonbipartite_instances(GF, "1/2");
        const auto bp = bipartite_instances(GF);
        for (const auto* list : {&nb, &bp}) {
            for (const auto& in : *list) {
                const auto v = validate_spec(parse_spec(in.spec, in.field));
                c.expect(v.empty(), name_of(in) + ": inadmissible");
            }
        }
        guarded(c, "q=1/2", [&] {
            const auto s = parse_spec("nbg:d=3,q=1/2", GF);
            c.expect(s.param && *s.param == GF.from_int(51), "q = 1/2 is not 51 in GF(101)");
        });
        dimension_criterion(c, nb, bp, true);
    });
    add(5, "Toeplitz closed forms", toeplitz_criterion);
    add(6, "idempotent entry formulas", idempotent_criterion);
    add(7, "determinant identities", determinant_criterion);
    add(8, "first appendix tables", [&](Criterion& c) {
        report_criterion(c, {{"nbg:d=4,q=q", Fq}, {"nbg1:d=3", Q}, {"nbg1:d=4", Q}, {"nbg1:d=5", Q}, {"nbng:d=4,t=t", Ft}},
                         verify_appendix1);
    });
    add(9, "second appendix tables", [&](Criterion& c) {
        report_criterion(c,
                         {{"bdt:d=4,t=t,r0=1,r1=1,r2=-1/t", Ft},
                          {"bd1:d=4,r0=2,r1=3", Q},
                          {"bd1:d=6,r0=2,r1=3", Q},
                          {"bd1:d=4,r0=r,r1=1", Fr},
                          {"bd1:d=6,r0=r,r1=1", Fr}},
                         verify_appendix2);
    });
    add(10, "property suites", property_criterion);

    const double total = seconds_since(start);
    Criterion& last = cs.back();
    last.expect(total < kSuiteSeconds, "suite took " + std::to_string(total) + " s");

    int failed = 0;
    for (const auto& c : cs) {
        const bool ok = c.failures.empty();
        if (!ok) ++failed;
        std::printf("%s  %2d  %s: %zu checks%s%s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), c.checks,
                    c.detail.empty() ? "" : ", ", c.detail.c_str());
        for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("        %s\n", c.failures[i].c_str());
    }
    std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(cs.size()) - failed, cs.size(), total);
    return failed == 0 ? 0 : 1;
}
