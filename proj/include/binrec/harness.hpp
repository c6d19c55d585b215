#pragma once

// Greatest-prime-factor sweeps against n exp(log n / (c log log n)), dyadic
// density summaries, and the flat report formats shared by the CLI.

#include <cstdint>
#include <string>
#include <vector>

#include "binrec/arith.hpp"
#include "binrec/interval.hpp"
#include "binrec/sequences.hpp"

namespace binrec {

/// The two admissible constants, kept as decimal text so 103.95 is enclosed exactly.
enum class BoundConstant { C104, C103_95 };
BoundConstant parse_bound_constant(const std::string& text);
std::string to_string(BoundConstant c);

/// Certified enclosure of n exp(log n / (c log log n)); n >= 3.
Interval bound_B(std::uint64_t n, BoundConstant c, mpfr_prec_t precision_bits = 128);

struct SweepRecord {
    std::uint64_t n = 0;
    std::size_t digits = 0;  // decimal digits of |u_n| (1 for 0)
    Integer P;               // P(u_n); a lower bound when budget_exceeded
    Interval bound;
    bool satisfied = false;  // P(u_n) > bound
    bool zero_term = false;
    bool budget_exceeded = false;
    bool indeterminate = false;  // P inside the bound interval at the precision cap
};

struct SweepOptions {
    BoundConstant constant = BoundConstant::C104;
    unsigned jobs = 1;
    std::uint64_t rho_budget = 1'000'000;
    const FactorHints* hints = nullptr;
    mpfr_prec_t precision_bits = 128;
};

/// One record per 3 <= n <= limit, ordered by n. Content does not depend on jobs.
std::vector<SweepRecord> sweep_gpf(const RecurrenceSpec& spec, std::uint64_t limit, const SweepOptions& options = {});

/// The record for a single n given u_n.
SweepRecord sweep_record(std::uint64_t n, const Integer& u, const SweepOptions& options);

struct DensityBlock {
    unsigned j = 0;  // block [2^j, 2^(j+1))
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;  // exclusive
    std::uint64_t count = 0;
    std::uint64_t violations = 0;
    std::uint64_t cumulative_count = 0;
    std::uint64_t cumulative_violations = 0;
    double density() const { return count ? static_cast<double>(violations) / static_cast<double>(count) : 0.0; }
    double cumulative_density() const {
        return cumulative_count ? static_cast<double>(cumulative_violations) / static_cast<double>(cumulative_count)
                                : 0.0;
    }
};

/// Violation counts per dyadic block of n, in increasing block order; blocks with
/// no records are omitted.
std::vector<DensityBlock> density_report(const std::vector<SweepRecord>& records);

enum class OutputFormat { Json, Csv };
OutputFormat parse_output_format(const std::string& text);

/// A flat report: column names plus rows of already-rendered cells. JSON cells
/// holding true/false/numbers are written unquoted when `raw` is set.
struct Cell {
    std::string text;
    bool raw = false;
};
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add(std::vector<Cell> row);
    /// JSON lines (one object per row) or CSV with a header line.
    std::string render(OutputFormat format) const;
};

Cell str(const std::string& s);
Cell str(const Integer& v);
Cell num(std::int64_t v);
Cell num(double v);
Cell flag(bool b);

Table sweep_table(const std::vector<SweepRecord>& records);
Table density_table(const std::vector<DensityBlock>& blocks);

}  // namespace binrec
