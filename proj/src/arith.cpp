#include "binrec/arith.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace binrec {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

// Bases 2..41 give a deterministic Miller-Rabin test for n < 3317044064679887385961981
// (Sorenson and Webster, 2015).
constexpr std::array<unsigned, 13> kMrBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(const Integer& n, const Integer& base) {
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Integer x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

Integer halve_mod(Integer x, const Integer& n) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
    return x;
}

Integer mod_pos(const Integer& a, const Integer& n) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Strong Lucas probable-prime test with Selfridge's parameters (P = 1, Q = (1 - D) / 4).
bool strong_lucas(const Integer& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    long d_val = 5;
    for (;;) {
        Integer dz = d_val;
        int j = mpz_jacobi(dz.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(dz) != n) return false;
        d_val = d_val > 0 ? -(d_val + 2) : -(d_val - 2);
    }
    const Integer D = d_val;
    const Integer P = 1;
    const Integer Q = (1 - d_val) / 4;

    Integer d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    Integer U = 1, V = P, Qk = mod_pos(Q, n);
    const size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (long b = static_cast<long>(bits) - 2; b >= 0; --b) {
        U = U * V % n;
        V = mod_pos(V * V - 2 * Qk, n);
        Qk = Qk * Qk % n;
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(b))) {
            Integer u_next = halve_mod(mod_pos(P * U + V, n), n);
            Integer v_next = halve_mod(mod_pos(D * U + P * V, n), n);
            U = u_next;
            V = v_next;
            Qk = mod_pos(Qk * Q, n);
        }
    }
    if (U == 0 || V == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = mod_pos(V * V - 2 * Qk, n);
        if (V == 0) return true;
        Qk = Qk * Qk % n;
    }
    return false;
}

// Brent's cycle-finding variant of Pollard rho on x -> x^2 + c. Returns a nontrivial
// factor or 0 when `steps` reaches `budget`.
Integer brent_rho(const Integer& n, std::uint64_t& steps, std::uint64_t budget) {
    constexpr std::uint64_t kBatch = 128;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        const Integer cc = c;
        auto f = [&](const Integer& v) -> Integer { return (v * v + cc) % n; };
        std::uint64_t r = 1;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            steps += r;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t lim = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    q = q * abs(x - y) % n;
                }
                steps += lim;
                g = gcd(q, n);
                k += kBatch;
                if (steps >= budget && g == 1) return 0;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                ++steps;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
        if (steps >= budget) return 0;
    }
}

}  // namespace

const Integer& deterministic_mr_limit() {
    static const Integer limit("3317044064679887385961981");
    return limit;
}

Primality primality(const Integer& n) {
    if (n < 2) return Primality::Composite;
    for (unsigned b : kMrBases) {
        if (n == b) return Primality::Prime;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return Primality::Composite;
    }
    if (n < 41 * 41) return Primality::Prime;
    if (n < deterministic_mr_limit()) {
        for (unsigned b : kMrBases)
            if (!miller_rabin(n, Integer(b))) return Primality::Composite;
        return Primality::Prime;
    }
    if (!miller_rabin(n, Integer(2))) return Primality::Composite;
    return strong_lucas(n) ? Primality::Probable : Primality::Composite;
}

bool Factorization::certified() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimeFactor& f) { return f.certified; });
}

Integer Factorization::product() const {
    Integer acc = sign;
    for (const auto& f : factors) acc *= pow(f.prime, f.exponent);
    return acc;
}

std::string Factorization::to_string() const {
    std::ostringstream os;
    if (sign == 0) return "0";
    if (factors.empty()) return sign < 0 ? "-1" : "1";
    if (sign < 0) os << "-1 * ";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << " * ";
        os << factors[i].prime.get_str();
        if (factors[i].exponent > 1) os << "^" << factors[i].exponent;
    }
    return os.str();
}

FactorHints::FactorHints(std::vector<Integer> primes) : primes_(std::move(primes)) {
    for (const auto& p : primes_)
        require(is_prime(p), "factor hint is not prime: " + p.get_str());
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

FactorHints FactorHints::load(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open factor hints file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<Integer> primes;
    for (const auto& item : doc.at("primes")) primes.push_back(parse_integer(item.get<std::string>()));
    return FactorHints(std::move(primes));
}

FactorBudgetError::FactorBudgetError(Factorization partial, std::vector<Integer> cofactors, std::uint64_t budget)
    : ResourceError([&] {
          std::ostringstream os;
          os << "Pollard rho budget of " << budget << " steps exhausted; unfactored cofactor";
          for (const auto& c : cofactors) os << ' ' << c.get_str();
          return os.str();
      }()),
      partial_(std::move(partial)),
      cofactors_(std::move(cofactors)),
      budget_(budget) {}

std::span<const std::uint32_t> small_primes() {
    static const std::vector<std::uint32_t> table = primes_up_to(kTrialLimit);
    return table;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

Factorization factorize(const Integer& m, const FactorOptions& options) {
    Factorization out;
    out.value = m;
    out.sign = sgn(m);
    if (m == 0) return out;

    std::map<Integer, PrimeFactor> found;
    auto record = [&](const Integer& p, unsigned e, bool certified) {
        auto [it, inserted] = found.try_emplace(p, PrimeFactor{p, 0, certified});
        it->second.exponent += e;
    };

    Integer rest = abs(m);
    for (std::uint32_t p : small_primes()) {
        if (Integer(p) * p > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
            record(Integer(p), e, true);
        }
    }
    if (options.hints != nullptr && rest > 1) {
        for (const auto& h : options.hints->primes()) {
            unsigned e = 0;
            while (mpz_divisible_p(rest.get_mpz_t(), h.get_mpz_t())) {
                mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), h.get_mpz_t());
                ++e;
            }
            if (e) record(h, e, primality(h) == Primality::Prime);
        }
    }

    std::vector<std::pair<Integer, unsigned>> stack;
    if (rest > 1) stack.emplace_back(rest, 1);
    std::vector<Integer> stuck;
    std::uint64_t steps = 0;
    while (!stack.empty()) {
        auto [n, mult] = stack.back();
        stack.pop_back();
        if (n == 1) continue;
        Primality pr = primality(n);
        if (pr != Primality::Composite) {
            record(n, mult, pr == Primality::Prime);
            continue;
        }
        if (mpz_perfect_power_p(n.get_mpz_t())) {
            for (unsigned long k = mpz_sizeinbase(n.get_mpz_t(), 2); k >= 2; --k) {
                Integer root;
                if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                    stack.emplace_back(root, mult * static_cast<unsigned>(k));
                    break;
                }
            }
            continue;
        }
        Integer d = steps < options.rho_budget ? brent_rho(n, steps, options.rho_budget) : Integer(0);
        if (d == 0) {
            stuck.push_back(n);
            continue;
        }
        Integer other = n / d;
        stack.emplace_back(d, mult);
        stack.emplace_back(other, mult);
    }

    for (auto& [p, f] : found) out.factors.push_back(f);
    if (!stuck.empty()) {
        std::sort(stuck.begin(), stuck.end());
        throw FactorBudgetError(std::move(out), std::move(stuck), options.rho_budget);
    }
    return out;
}

Integer greatest_prime_factor(const Integer& m, const FactorOptions& options) {
    Factorization f = factorize(m, options);
    if (f.factors.empty()) return 1;
    return f.factors.back().prime;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_small(std::uint64_t n) {
    require(n >= 1, "factor_small expects n >= 1");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int moebius(std::uint64_t n) {
    require(n >= 1, "moebius expects n >= 1");
    int mu = 1;
    for (auto [p, e] : factor_small(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t euler_phi(std::uint64_t n) {
    require(n >= 1, "euler_phi expects n >= 1");
    std::uint64_t phi = n;
    for (auto [p, e] : factor_small(n)) phi = phi / p * (p - 1);
    return phi;
}

unsigned omega(std::uint64_t n) {
    require(n >= 1, "omega expects n >= 1");
    return static_cast<unsigned>(factor_small(n).size());
}

std::uint64_t two_pow_omega(std::uint64_t n) { return std::uint64_t{1} << omega(n); }

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    require(n >= 1, "divisors expects n >= 1");
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factor_small(n)) {
        const size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Valuation ord_p(const Integer& m, const Integer& p) {
    require(is_prime(p), "ord_p: modulus is not prime: " + p.get_str());
    if (m == 0) return Valuation::infinity();
    return Valuation(ord_p_unchecked(m, p));
}

long ord_p(const Rational& x, const Integer& p) {
    require(is_prime(p), "ord_p: modulus is not prime: " + p.get_str());
    require(x != 0, "ord_p of rational zero");
    return static_cast<long>(ord_p_unchecked(x.get_num(), p)) - static_cast<long>(ord_p_unchecked(x.get_den(), p));
}

unsigned long ord_p_unchecked(const Integer& m, const Integer& p) {
    Integer rest;
    return mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
}

std::uint64_t to_u64(const Integer& n) {
    require(n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64, "value does not fit in 64 bits: " + n.get_str());
    std::uint64_t lo = mpz_get_ui(n.get_mpz_t());
    if constexpr (sizeof(unsigned long) >= 8) return lo;
    Integer hi = n >> 32;
    return (static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32) | (lo & 0xffffffffu);
}

Integer from_u64(std::uint64_t n) {
    Integer out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
    return out;
}

Integer parse_integer(const std::string& text) {
    Integer out;
    std::string t = text;
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    require(!t.empty() && out.set_str(t, 10) == 0, "not a decimal integer: '" + text + "'");
    return out;
}

Integer sqrt_mod_prime(const Integer& a_in, const Integer& p) {
    Integer a = mod_pos(a_in, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    require(mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) == 1, "sqrt_mod_prime: not a quadratic residue");
    Integer q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Integer c, x, t, e;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    e = (q + 1) / 2;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    Integer g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    require(m >= 1, "inverse_mod: modulus must be positive");
    if (m == 1) return 0;
    std::int64_t r0 = m, r1 = mod_floor(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    require(r0 == 1, "inverse_mod: not invertible");
    return mod_floor(s0, m);
}

Integer pow(const Integer& base, unsigned long exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

}  // namespace binrec
