#include <catch2/catch_amalgamated.hpp>

#include "comaut/witnesses.hpp"

using namespace comaut;

namespace {

const WitnessReport& find(const std::vector<WitnessReport>& reports, const std::string& name) {
    for (const WitnessReport& r : reports)
        if (r.name == name) return r;
    FAIL("no report named " << name);
    return reports.front();
}

}  // namespace

TEST_CASE("single sharp group shuffle case") {
    auto reports = run_report({witness_group_shuffle_sharp(2, 3, 2)});
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].verdict == Verdict::Matches);
    CHECK(reports[0].m.sc == 36);
    CHECK(reports[0].claimed == 36.0);
}

TEST_CASE("empty case list gives an empty table") {
    auto reports = run_report({});
    CHECK(reports.empty());
    std::string md = render_markdown(reports);
    CHECK(md.find("| case |") != std::string::npos);
    CHECK(std::count(md.begin(), md.end(), '\n') == 2);  // header + separator only
}

TEST_CASE("coprime shuffle witnesses") {
    auto reports = run_report({witness_group_shuffle_coprime(2, 3),
                               witness_group_shuffle_coprime(3, 4),
                               witness_group_shuffle_coprime(1, 1)});
    CHECK(reports[0].m.sc == 6);
    CHECK(reports[0].verdict == Verdict::Matches);
    CHECK(reports[1].m.sc == 12);
    CHECK(reports[1].verdict == Verdict::Matches);
    CHECK(reports[2].m.sc == 1);  // both operands are sigma*
    CHECK(reports[2].verdict == Verdict::Matches);
}

TEST_CASE("union and intersection witnesses") {
    auto cases = witness_union_intersection(2, 3);
    REQUIRE(cases.size() == 4);
    auto reports = run_report(cases);
    for (const WitnessReport& r : reports) {
        CHECK(r.m.sc == 6);
        CHECK(r.verdict == Verdict::Matches);
    }
    // the intersection side of the degenerate (1,m) pair still measures m
    auto degenerate = run_report({witness_union_intersection(1, 3)[1]});
    CHECK(degenerate[0].operation == "intersection");
    CHECK(degenerate[0].m.sc == 3);
}

TEST_CASE("upward and downward witnesses") {
    SECTION("group upward, unary alphabet") {
        for (std::uint32_t n : {1u, 4u}) {
            auto reports = run_report({witness_group_upward(n)});
            CHECK(reports[0].m.sc == n);
            CHECK(reports[0].verdict == Verdict::Matches);
        }
    }
    SECTION("aperiodic downward") {
        auto reports = run_report({witness_aperiodic_downward(3), witness_aperiodic_downward(0),
                                   witness_aperiodic_downward(1)});
        CHECK(reports[0].m.sc == 5);
        CHECK(reports[1].m.sc == 2);
        CHECK(reports[2].m.sc == 3);
        for (const auto& r : reports) CHECK(r.verdict == Verdict::Matches);
    }
    SECTION("heam lower bounds with hand-computed values") {
        auto reports = run_report({witness_heam_upward(2, 2), witness_heam_upward(3, 2),
                                   witness_heam_upward(1, 1)});
        CHECK(reports[0].m.sc == 5);   // N^k + 1
        CHECK(reports[1].m.sc == 10);
        CHECK(reports[2].m.sc == 2);
        for (const auto& r : reports) CHECK(r.verdict == Verdict::WithinBound);
    }
}

TEST_CASE("the two-spike shuffle family reports against measured operands") {
    auto cases = witness_aperiodic_shuffle(1, 1);
    auto reports = run_report(cases);
    const WitnessReport& main = find(reports, "aperiodic-shuffle N=1 M=1");
    // U sh V = all two-letter words: four states; measured operands have sc 3
    CHECK(main.m.sc == 4);
    CHECK(main.claimed == 3.0 * 3.0 / 4 + 1);
    CHECK(main.verdict == Verdict::WithinBound);
    const WitnessReport& operand = find(reports, "aperiodic-shuffle-operand-sc N=1");
    CHECK(operand.m.sc == 3);            // |Sigma|N+2 would be 4
    CHECK(operand.verdict == Verdict::DiscrepancyNoted);
}

TEST_CASE("default suite has no violations and enough rows") {
    auto reports = run_report(default_suite());
    CHECK(reports.size() >= 12);
    std::size_t matches = 0;
    for (const WitnessReport& r : reports) {
        CHECK(r.verdict != Verdict::Violates);
        if (r.verdict == Verdict::Matches) ++matches;
    }
    CHECK(matches >= 12);

    std::string md = render_markdown(reports);
    CHECK(std::count(md.begin(), md.end(), '\n') == long(reports.size()) + 2);
    std::string csv = render_csv(reports);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == long(reports.size()) + 1);
    nlohmann::json j = render_json(reports);
    CHECK(j.size() == reports.size());
    // deterministic rendering
    CHECK(md == render_markdown(run_report(default_suite())));
}

TEST_CASE("witness families classify as advertised") {
    SECTION("group families") {
        GridAutomaton v = detail::progression_product(2, 1, 2);
        GridAutomaton w = detail::progression_product(2, 2, 3);
        CHECK(grid_is_group(v));
        CHECK(grid_is_group(w));
        for (std::uint32_t n : {2u, 3u, 5u}) CHECK(grid_is_group(detail::mod_counter(2, 0, n)));
        CHECK(grid_is_group(detail::mod_counter(2, 2, 3)));
    }
    SECTION("aperiodic families") {
        CHECK(grid_is_aperiodic(grid_word({3})));
        GridAutomaton spikes = grid_union(grid_word({2, 0}), grid_word({0, 2}));
        CHECK(grid_is_aperiodic(spikes));
        CHECK_FALSE(grid_is_group(spikes));
    }
}

TEST_CASE("builder failures carry the case name") {
    WitnessCase broken;
    broken.name = "broken-case";
    broken.evaluate = []() -> WitnessMeasurement {
        throw std::runtime_error("builder exploded");
    };
    try {
        run_report({broken});
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("broken-case") != std::string::npos);
    }
}
