#include "binrec/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace binrec {

namespace {

std::string constant_text(BoundConstant c) { return c == BoundConstant::C104 ? "104" : "103.95"; }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

Integer largest(const Factorization& f) {
    Integer p = 1;
    for (const auto& pf : f.factors)
        if (pf.prime > p) p = pf.prime;
    return p;
}

}  // namespace

BoundConstant parse_bound_constant(const std::string& text) {
    if (text == "104") return BoundConstant::C104;
    if (text == "103.95") return BoundConstant::C103_95;
    throw PreconditionError("constant must be 104 or 103.95, got '" + text + "'");
}

std::string to_string(BoundConstant c) { return constant_text(c); }

Interval bound_B(std::uint64_t n, BoundConstant c, mpfr_prec_t prec) {
    require(n >= 3, "the bound needs n >= 3");
    const Interval ln = log_abs(from_u64(n), prec);
    return Interval::point(from_u64(n), prec) * exp(ln / (Interval::decimal(constant_text(c), prec) * log(ln)));
}

SweepRecord sweep_record(std::uint64_t n, const Integer& u, const SweepOptions& options) {
    SweepRecord rec;
    rec.n = n;
    rec.digits = u == 0 ? 1 : Integer(abs(u)).get_str().size();
    rec.bound = bound_B(n, options.constant, options.precision_bits);
    if (u == 0) {
        rec.zero_term = true;
        rec.P = 1;
        return rec;
    }
    FactorOptions fo;
    fo.rho_budget = options.rho_budget;
    fo.hints = options.hints;
    bool above_trial_bound = false;
    try {
        rec.P = greatest_prime_factor(u, fo);
    } catch (const FactorBudgetError& err) {
        rec.budget_exceeded = true;
        rec.P = largest(err.partial());
        // Stuck cofactors survived trial division, so all their primes exceed it.
        above_trial_bound = !err.cofactors().empty();
    }
    if (above_trial_bound) {
        const Integer trial_bound = from_u64(small_primes().back());
        if (rec.bound.certainly_less(trial_bound)) {
            rec.satisfied = true;
            return rec;
        }
    }
    for (mpfr_prec_t prec = options.precision_bits;; prec *= 2) {
        const Interval b = bound_B(n, options.constant, prec);
        if (b.certainly_less(rec.P)) {
            rec.satisfied = true;
            return rec;
        }
        if (b.certainly_greater(rec.P)) return rec;
        if (prec * 2 > kMaxPrecisionBits) {
            rec.indeterminate = true;
            return rec;
        }
    }
}

std::vector<SweepRecord> sweep_gpf(const RecurrenceSpec& spec, std::uint64_t limit, const SweepOptions& options) {
    const auto nd = is_nondegenerate(spec);
    require(nd.nondegenerate, "sequence is degenerate: " + to_string(nd.reason));
    if (limit < 3) return {};
    const std::vector<Integer> u = terms(spec, limit + 1);
    const std::uint64_t count = limit - 2;
    std::vector<SweepRecord> out(count);
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(count)));
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](unsigned id) {
        try {
            for (std::uint64_t k = id; k < count; k += jobs) out[k] = sweep_record(k + 3, u[k + 3], options);
        } catch (...) {
            errors[id] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(work, id);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<DensityBlock> density_report(const std::vector<SweepRecord>& records) {
    std::vector<DensityBlock> blocks;
    for (const SweepRecord& r : records) {
        require(r.n >= 1, "records need n >= 1");
        unsigned j = 0;
        while ((std::uint64_t{2} << j) <= r.n) ++j;
        auto it = std::find_if(blocks.begin(), blocks.end(), [&](const DensityBlock& b) { return b.j == j; });
        if (it == blocks.end()) {
            DensityBlock b;
            b.j = j;
            b.lo = std::uint64_t{1} << j;
            b.hi = std::uint64_t{2} << j;
            blocks.push_back(b);
            it = blocks.end() - 1;
        }
        ++it->count;
        if (!r.satisfied) ++it->violations;
    }
    std::sort(blocks.begin(), blocks.end(), [](const DensityBlock& a, const DensityBlock& b) { return a.j < b.j; });
    std::uint64_t c = 0, v = 0;
    for (DensityBlock& b : blocks) {
        c += b.count;
        v += b.violations;
        b.cumulative_count = c;
        b.cumulative_violations = v;
    }
    return blocks;
}

OutputFormat parse_output_format(const std::string& text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    throw PreconditionError("format must be json or csv, got '" + text + "'");
}

void Table::add(std::vector<Cell> row) {
    require(row.size() == columns.size(), "row width does not match the columns");
    rows.push_back(std::move(row));
}

std::string Table::render(OutputFormat format) const {
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << csv_escape(columns[c]);
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(row[c].text);
            os << '\n';
        }
        return os.str();
    }
    for (const auto& row : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c)
            obj[columns[c]] = row[c].raw ? nlohmann::ordered_json::parse(row[c].text) : nlohmann::ordered_json(row[c].text);
        os << obj.dump() << '\n';
    }
    return os.str();
}

Cell str(const std::string& s) { return {s, false}; }
Cell str(const Integer& v) { return {v.get_str(), false}; }
Cell num(std::int64_t v) { return {std::to_string(v), true}; }
Cell num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return {buf, true};
}
Cell flag(bool b) { return {b ? "true" : "false", true}; }

Table sweep_table(const std::vector<SweepRecord>& records) {
    Table t;
    t.columns = {"n", "digits", "P", "bound_lo", "bound_hi", "satisfied", "zero_term", "budget_exceeded", "indeterminate"};
    for (const SweepRecord& r : records)
        t.add({num(static_cast<std::int64_t>(r.n)), num(static_cast<std::int64_t>(r.digits)), str(r.P),
               str(r.bound.lower_string(15)), str(r.bound.upper_string(15)), flag(r.satisfied), flag(r.zero_term),
               flag(r.budget_exceeded), flag(r.indeterminate)});
    return t;
}

Table density_table(const std::vector<DensityBlock>& blocks) {
    Table t;
    t.columns = {"block_lo", "block_hi", "count", "violations", "density", "cumulative_count",
                 "cumulative_violations", "cumulative_density"};
    for (const DensityBlock& b : blocks)
        t.add({num(static_cast<std::int64_t>(b.lo)), num(static_cast<std::int64_t>(b.hi)),
               num(static_cast<std::int64_t>(b.count)), num(static_cast<std::int64_t>(b.violations)), num(b.density()),
               num(static_cast<std::int64_t>(b.cumulative_count)), num(static_cast<std::int64_t>(b.cumulative_violations)),
               num(b.cumulative_density())});
    return t;
}

}  // namespace binrec
