// Acceptance runner: one PASS/FAIL line per criterion, margins written as JSON lines.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "binrec/cyclotomic.hpp"
#include "binrec/harness.hpp"
#include "binrec/muldep.hpp"
#include "binrec/padic.hpp"
#include "binrec/primitive.hpp"
#include "binrec/report.hpp"

using namespace binrec;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Criteria {
public:
    void run(int id, const std::string& title, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = body();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.1fs", secs);
        std::cout << (out.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << timing << "]";
        if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
        std::cout << std::endl;
        failures_ += out.ok ? 0 : 1;
    }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

class MarginSink {
public:
    explicit MarginSink(const std::string& path) : out_(path) {}
    bool good() const { return static_cast<bool>(out_); }
    void write(const std::string& source, Json row) {
        Json tagged{{"source", source}};
        for (auto& [k, v] : row.items()) tagged[k] = v;
        out_ << tagged.dump() << '\n';
    }

private:
    std::ofstream out_;
};

std::string test_dir() { return BINREC_TEST_DIR; }

const RecurrenceSpec kFib{1, 1, 0, 1};
const RecurrenceSpec kGauss{4, -5, 2, 2};

ThetaData running_theta() { return make_theta(QuadElem(2, 1, -1), QuadElem(2, -1, -1)); }

std::vector<std::pair<CycloInt, CycloInt>> identity_points(int e) {
    if (e == 4) return {{CycloInt(4, 2), CycloInt(4, 1)}, {CycloInt(4, 3), CycloInt(4, 2)}, {CycloInt(4, 2, 1), CycloInt(4, 2, -1)}};
    const CycloInt t(3, 3, 1);
    return {{CycloInt(3, 2), CycloInt(3, 1)}, {CycloInt(3, 3), CycloInt(3, 2)}, {t, t.conj()}};
}

Outcome cyclotomic_identities() {
    std::size_t checks = 0;
    for (int e : {3, 4}) {
        for (const auto& [x, y] : identity_points(e)) {
            for (std::uint64_t n = 1; n <= 60; ++n) {
                CycloInt prod = x.one();
                for (long i = 1; i < e; ++i) {
                    if (std::gcd(i, static_cast<long>(e)) != 1) continue;
                    const CycloInt phi = phi_ie_eval(n, e, i, x, y);
                    prod = prod * phi;
                    if (phi * psi_ie_eval(n, e, i, x, y) != twisted_difference(n, e, i, x, y))
                        return {false, "Phi*Psi mismatch at n=" + std::to_string(n) + " e=" + std::to_string(e)};
                    ++checks;
                }
                if (prod != phi_eval(n * e, x, y))
                    return {false, "class product mismatch at n=" + std::to_string(n) + " e=" + std::to_string(e)};
                ++checks;
            }
        }
    }
    return {true, std::to_string(checks) + " exact identities"};
}

Outcome worked_values() {
    const CycloInt two(4, 2), one(4, 1);
    if (phi_ie_eval(5, 4, 1, two, one) != CycloInt(4, 13, 6)) return {false, "Phi_{5,4}^(1)(2,1)"};
    if (phi_ie_eval(5, 4, 3, two, one) != CycloInt(4, 13, -6)) return {false, "conjugate class i=3"};
    if (phi_eval<Integer>(12, 2, 1) != 13) return {false, "Phi_12(2,1)"};
    auto [a, b] = roots_of(1, 1);
    if (phi_eval(12, a, b) != QuadElem::rational(6, 5)) return {false, "Phi_12(alpha,beta)"};
    return {true, "13+6i, 13-6i, 13, 6"};
}

Outcome lucas_law() {
    std::size_t checks = 0;
    for (const RecurrenceSpec& spec : {kFib, kGauss}) {
        const auto t = terms(spec.lucas(), 401);
        for (std::uint32_t p : primes_up_to(100)) {
            if (spec.s % p == 0) continue;
            for (std::uint64_t n = 1; n <= 400; ++n) {
                const auto direct = ord_p(t[n], Integer(p)).value();
                if (lucas_valuation(spec, n, p) != direct)
                    return {false, "mismatch at " + spec.to_string() + " n=" + std::to_string(n) + " p=" + std::to_string(p)};
                ++checks;
            }
        }
    }
    return {true, std::to_string(checks) + " pairs, 0 mismatches"};
}

Outcome rank_law() {
    std::size_t count = 0;
    for (std::uint32_t p : primes_up_to(10'000)) {
        const RankRecord rec = rank_of_apparition(kFib, p);
        if (rec.l > p + 1) return {false, "rank above p+1 at p=" + std::to_string(p)};
        ++count;
    }
    if (rank_of_apparition(kFib, 7).l != 8) return {false, "rank(7) != 8"};
    return {true, std::to_string(count) + " primes, rank(7)=8"};
}

Outcome phi_structure() {
    const FactorHints hints = FactorHints::load(test_dir() + "/data/fibonacci_phi_hints.json");
    FactorOptions opts;
    opts.hints = &hints;
    std::size_t primes = 0;
    for (std::uint64_t n = 5; n <= 300; ++n) {
        if (n == 6 || n == 12) continue;
        const PhiPrimeReport r = phi_prime_structure(kFib, n, opts);
        if (!r.exhaustive()) return {false, "unfactored cofactor at n=" + std::to_string(n)};
        for (const auto& e : r.entries) {
            if (e.cls == PhiPrimeClass::Unclassified) return {false, "unclassified prime at n=" + std::to_string(n)};
            ++primes;
        }
    }
    return {true, std::to_string(primes) + " primes classified"};
}

std::vector<RecurrenceSpec> generated_instances() {
    auto make = [](const CycloInt& alpha, const CycloInt& c, unsigned j) {
        const CycloInt a = c * pow(alpha, j);
        const CycloInt u1 = a * alpha + (a * alpha).conj();
        return RecurrenceSpec{(alpha + alpha.conj()).u(), -alpha.norm(), (a + a.conj()).u(), u1.u()};
    };
    std::vector<RecurrenceSpec> out;
    for (const CycloInt& c : {CycloInt(4, 1), CycloInt(4, 0, 1), CycloInt(4, 1, 1)})
        for (unsigned j = 0; j <= 3; ++j) out.push_back(make(CycloInt(4, 2, 1), c, j));
    for (const CycloInt& c : {CycloInt(3, 0, 1), CycloInt(3, 1, -1)})
        for (unsigned j = 0; j <= 3; ++j) out.push_back(make(CycloInt(3, 3, 1), c, j));
    return out;
}

Outcome theta_construction() {
    std::vector<RecurrenceSpec> instances{kGauss, {2, -10, 2, -4}, {1, 1, 2, 1}};
    for (const auto& s : generated_instances()) instances.push_back(s);
    std::size_t identities = 0, divisions = 0;
    for (const RecurrenceSpec& spec : instances) {
        const ClosedForm cf = closed_form(spec);
        const auto w = find_dependence(cf);
        if (!w) return {false, "no witness for " + spec.to_string()};
        if (!witness_invariants_hold(*w, cf)) return {false, "witness invariants for " + spec.to_string()};
        const ThetaData th = build_theta(*w, cf);
        for (std::uint64_t n = 0; n <= 100; ++n) {
            if (!verify_theta_identity(th, *w, cf, spec, n))
                return {false, "identity at " + spec.to_string() + " n=" + std::to_string(n)};
            ++identities;
            const bool admissible = n >= 1 && (w->kase == DependenceCase::LZero || w->k1 * static_cast<long>(n) + w->l1 >= 1);
            if (admissible) {
                divisibility_consequence(th, *w, cf, spec, n);
                ++divisions;
            }
        }
    }
    // Phi_12(alpha, beta) = 6 divides L_6 = 18.
    {
        const RecurrenceSpec lucas{1, 1, 2, 1};
        const ClosedForm cf = closed_form(lucas);
        const auto w = find_dependence(cf);
        const ThetaData th = build_theta(*w, cf);
        const DivisibilityResult d = divisibility_consequence(th, *w, cf, lucas, 6);
        if (d.index != 12 || d.divisor != "6" || term(lucas, 6) != 18 || !d.divides_sequence_multiple)
            return {false, "Phi_12 | L_6"};
    }
    // Phi_{3,4}^(1)(2+i, 2-i) = 3i divides theta1^3 - i theta2^3.
    {
        const ThetaData th = running_theta();
        const CycloInt v = phi_ie_eval(3, 4, 1, th.cyclo1(4), th.cyclo2(4));
        const CycloInt tw = twisted_difference(3, 4, 1, th.cyclo1(4), th.cyclo2(4));
        if (v != CycloInt(4, 0, 3) || !try_divide(tw, v)) return {false, "3i | theta1^3 - i theta2^3"};
    }
    return {true, std::to_string(instances.size()) + " instances, " + std::to_string(identities) + " identities, " +
                      std::to_string(divisions) + " exact divisions"};
}

Outcome guard_and_measure() {
    std::vector<RecurrenceSpec> instances{kGauss, {2, -10, 2, -4}, {1, 1, 2, 1}, {1, 1, 1, 3}, {6, -25, 4, 4}};
    for (const auto& s : generated_instances()) instances.push_back(s);
    std::size_t guarded = 0;
    for (const RecurrenceSpec& spec : instances) {
        const ClosedForm cf = closed_form(spec);
        const ThetaData th = build_theta(*find_dependence(cf), cf);
        if (!th.conjugate_branch) continue;
        if (th.N * th.N < 2 * th.g * th.g) return {false, "guard fails for " + spec.to_string()};
        if (mahler_lambda(th) != Rational(th.N) / th.g) return {false, "measure for " + spec.to_string()};
        ++guarded;
    }
    for (const RecurrenceSpec& spec : {kGauss, RecurrenceSpec{2, -10, 2, -4}}) {
        const ClosedForm cf = closed_form(spec);
        if (mahler_lambda(build_theta(*find_dependence(cf), cf)) != 5) return {false, "measure != 5 for " + spec.to_string()};
    }
    return {true, std::to_string(guarded) + " conjugate-branch thetas, measures 5 and 5"};
}

Outcome log_gap(MarginSink& sink) {
    const ThetaData th = running_theta();
    double min_c1 = 1e300;
    for (std::uint64_t n = 1; n <= 200; ++n) {
        for (long k : {1L, 3L}) {
            const LogGapMargin m = log_gap_margins(th, 4, k, n);
            if (!m.upper_holds) return {false, "upper bound fails at n=" + std::to_string(n)};
            Json row = to_json(m);
            row["k"] = k;
            sink.write("log_gap", row);
            if (n >= 2) min_c1 = std::min(min_c1, m.c1);
        }
    }
    for (std::uint64_t n = 1; n <= 60; ++n) sink.write("partial_phi", to_json(partial_phi_margins(th, 4, 1, n)));
    for (std::uint64_t n = 5; n <= 100; n += 5)
        for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u})
            sink.write("ordp", to_json(ordp_bound_margin(MarginKind::LucasTerm, kFib, n, p)));
    char buf[64];
    std::snprintf(buf, sizeof buf, "400 exact checks, min c1 %.4f", min_c1);
    return {true, buf};
}

std::set<std::uint64_t> violation_set(const std::vector<SweepRecord>& recs) {
    std::set<std::uint64_t> out;
    for (const auto& r : recs)
        if (!r.satisfied) out.insert(r.n);
    return out;
}

Outcome gpf_sweep() {
    std::ifstream in(test_dir() + "/golden/fibonacci_gpf_300.json");
    if (!in) return {false, "golden file missing"};
    const auto golden = Json::parse(in);
    const auto expect = golden["violations"].get<std::set<std::uint64_t>>();
    std::string first;
    for (unsigned jobs : {1u, 2u, 8u}) {
        SweepOptions opts;
        opts.jobs = jobs;
        const auto recs = sweep_gpf(kFib, 300, opts);
        if (violation_set(recs) != expect) return {false, "violation set differs with jobs=" + std::to_string(jobs)};
        const std::string text = sweep_table(recs).render(OutputFormat::Json);
        if (first.empty()) {
            first = text;
        } else if (text != first) {
            return {false, "output differs with jobs=" + std::to_string(jobs)};
        }
    }
    return {true, std::to_string(expect.size()) + " violations, byte-identical for 1/2/8 workers"};
}

Outcome primitive_search(MarginSink& sink) {
    const ThetaData th = running_theta();
    std::size_t exceed = 0, total = 0;
    for (std::uint64_t m = 13; m <= 60; ++m) {
        const PrimitiveResult r = primitive_prime_search(th, 4, 1, m);
        if (r.factorization.product() != r.value) return {false, "reassembly at m=" + std::to_string(m)};
        const CycloInt tw = twisted_difference(m, 4, 1, th.cyclo1(4), th.cyclo2(4));
        for (const auto& f : r.factorization.factors)
            if (!try_divide(tw, f.pi)) return {false, "factor does not divide at m=" + std::to_string(m)};
        sink.write("primitive", to_json(r));
        exceed += r.exceeds_bound ? 1 : 0;
        ++total;
    }
    return {true, std::to_string(exceed) + "/" + std::to_string(total) + " exceed the bound (reported)"};
}

}  // namespace

int main(int argc, char** argv) {
    std::string margins_path = "margins.jsonl";
    for (int k = 1; k + 1 < argc; ++k)
        if (std::string(argv[k]) == "--margins") margins_path = argv[k + 1];
    MarginSink sink(margins_path);
    if (!sink.good()) {
        std::cerr << "cannot open " << margins_path << '\n';
        return 2;
    }

    Criteria c;
    c.run(1, "cyclotomic class product and Phi*Psi identities", cyclotomic_identities);
    c.run(2, "worked cyclotomic values", worked_values);
    c.run(3, "Lucas valuation law against direct orders", lucas_law);
    c.run(4, "rank of apparition bound", rank_law);
    c.run(5, "prime structure of Phi_n(alpha, beta) for Fibonacci", phi_structure);
    c.run(6, "dependence witnesses, theta identities and divisibility", theta_construction);
    c.run(7, "size guard and Mahler measure", guard_and_measure);
    c.run(8, "log-gap upper bound and margins", [&] { return log_gap(sink); });
    c.run(9, "GPF sweep against golden file and worker determinism", gpf_sweep);
    c.run(10, "primitive prime search", [&] { return primitive_search(sink); });
    std::cout << "margins written to " << margins_path << std::endl;
    return c.failures() == 0 ? 0 : 1;
}
