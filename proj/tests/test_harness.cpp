#include <fstream>
#include <set>

#include "binrec/harness.hpp"
#include "binrec/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace binrec;

namespace {

nlohmann::json load_golden(const std::string& name) {
    std::ifstream in(std::string(BINREC_TEST_DIR) + "/golden/" + name);
    REQUIRE(static_cast<bool>(in));
    return nlohmann::json::parse(in);
}

std::set<std::uint64_t> violations(const std::vector<SweepRecord>& recs) {
    std::set<std::uint64_t> out;
    for (const auto& r : recs)
        if (!r.satisfied) out.insert(r.n);
    return out;
}

}  // namespace

TEST_CASE("bound values") {
    const Interval b1000 = bound_B(1000, BoundConstant::C104);
    CHECK(b1000.lower() > 1034.96);
    CHECK(b1000.upper() < 1034.98);
    const Interval b100 = bound_B(100, BoundConstant::C104);
    CHECK(b100.lower() > 102.93);
    CHECK(b100.upper() < 102.95);
    CHECK(bound_B(3, BoundConstant::C104).certainly_greater(3));
    CHECK_THROWS_AS(bound_B(2, BoundConstant::C104), PreconditionError);
    CHECK(bound_B(1000, BoundConstant::C104).certainly_less(bound_B(1000, BoundConstant::C103_95)));
    CHECK(parse_bound_constant("103.95") == BoundConstant::C103_95);
    CHECK_THROWS_AS(parse_bound_constant("100"), PreconditionError);
}

TEST_CASE("bound is increasing from 16 on") {
    Interval prev = bound_B(16, BoundConstant::C104);
    for (std::uint64_t n = 17; n <= 1'000'000; n += (n < 2000 ? 1 : 997)) {
        const Interval cur = bound_B(n, BoundConstant::C104, 64);
        REQUIRE(prev.certainly_less(cur));
        prev = cur;
    }
}

TEST_CASE("Fibonacci sweep matches the golden violation set") {
    const auto golden = load_golden("fibonacci_gpf_300.json");
    const std::set<std::uint64_t> expect = golden["violations"].get<std::set<std::uint64_t>>();
    SweepOptions opts;
    opts.jobs = 4;
    const auto recs = sweep_gpf({1, 1, 0, 1}, 300, opts);
    REQUIRE(recs.size() == 298);
    CHECK(violations(recs) == expect);
    CHECK(recs.front().n == 3);
    CHECK(recs.back().n == 300);

    const auto blocks = density_report(recs);
    REQUIRE(blocks.size() == golden["density"].size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        CHECK(blocks[k].lo == golden["density"][k]["block_lo"].get<std::uint64_t>());
        CHECK(blocks[k].count == golden["density"][k]["count"].get<std::uint64_t>());
        CHECK(blocks[k].violations == golden["density"][k]["violations"].get<std::uint64_t>());
        CHECK(blocks[k].cumulative_violations == golden["density"][k]["cumulative_violations"].get<std::uint64_t>());
    }
}

TEST_CASE("Gaussian sweep matches the golden violation set") {
    const auto golden = load_golden("gaussian_gpf_200.json");
    SweepOptions opts;
    opts.jobs = 2;
    const auto recs = sweep_gpf({4, -5, 2, 2}, 200, opts);
    CHECK(violations(recs) == golden["violations"].get<std::set<std::uint64_t>>());
}

TEST_CASE("sweep output does not depend on the worker count") {
    SweepOptions one, eight;
    eight.jobs = 8;
    const std::string a = sweep_table(sweep_gpf({1, 1, 0, 1}, 150, one)).render(OutputFormat::Json);
    const std::string b = sweep_table(sweep_gpf({1, 1, 0, 1}, 150, eight)).render(OutputFormat::Json);
    CHECK(a == b);
}

TEST_CASE("zero terms and degenerate density inputs") {
    const SweepRecord z = sweep_record(5, 0, {});
    CHECK(z.zero_term);
    CHECK(z.P == 1);
    CHECK(!z.satisfied);

    CHECK(density_report({}).empty());
    std::vector<SweepRecord> all;
    for (std::uint64_t n = 3; n < 40; ++n) {
        SweepRecord r;
        r.n = n;
        all.push_back(r);
    }
    for (const auto& b : density_report(all)) CHECK(b.density() == 1.0);
}

TEST_CASE("budget exhaustion still decides the record") {
    const Integer p("1000000000000000000000000000057"), q("1000000000000000000000000000099");
    SweepOptions opts;
    opts.rho_budget = 100;
    const SweepRecord r = sweep_record(100, p * q * 6, opts);
    CHECK(r.budget_exceeded);
    CHECK(r.satisfied);
}

TEST_CASE("table rendering") {
    Table t;
    t.columns = {"n", "P", "ok"};
    t.add({num(std::int64_t{3}), str(Integer(2)), flag(false)});
    CHECK(t.render(OutputFormat::Json) == "{\"n\":3,\"P\":\"2\",\"ok\":false}\n");
    CHECK(t.render(OutputFormat::Csv) == "n,P,ok\n3,2,false\n");
    CHECK_THROWS_AS(parse_output_format("xml"), PreconditionError);
}

TEST_CASE("flattened reports") {
    const std::vector<Json> rows{Json{{"n", 0}, {"d", nullptr}},
                                 Json{{"n", 1}, {"d", Json{{"a", "x,y"}, {"b", true}}}, {"l", Json::array({"2", "3"})}}};
    CHECK(render(rows, OutputFormat::Csv) == "n,d.a,d.b,l\n0,,,\n1,\"x,y\",true,2;3\n");
    CHECK(render(rows, OutputFormat::Json) == rows[0].dump() + "\n" + rows[1].dump() + "\n");
}
