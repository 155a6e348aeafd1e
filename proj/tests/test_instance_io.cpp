#include "doctest.h"

#include "matchkit/catalog.hpp"
#include "matchkit/instance_io.hpp"

#include <algorithm>

using namespace matchkit;

namespace {

const char* kFig4 = "3 4 2\n1: 1 2\n2: 2 3\n3: 1 3\n1: 2: 1 2 3\n2: 1: 2 1 3\n1: 1: 1\n2: 2: 1\n3: 2: 2\n4: 1: 2\n";
const char* kFig5 = "3 4 2\n1: (1 2)\n2: 2 3\n3: (1 3)\n1: 2:\n2: 1:\n1: 1: 1\n2: 2: 1\n3: 2: 2\n4: 1: 2";

ParseError::Kind kind_of(ProblemClass cls, const std::string& text)
{
    try {
        parse_instance(cls, text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("expected a parse error for: " << text);
    return ParseError::Kind::invalid_instance;
}

int line_of(ProblemClass cls, const std::string& text)
{
    try {
        parse_instance(cls, text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

bool has(const std::vector<AlgorithmInfo>& algs, std::string_view name)
{
    return std::any_of(algs.begin(), algs.end(), [&](const auto& a) { return a.name == name; });
}

}  // namespace

TEST_CASE("roommates text with trailing space")
{
    const Instance inst = parse_instance(ProblemClass::SR, "2\n2 \n1");
    REQUIRE(inst.first().size() == 2);
    CHECK(inst.first().prefs[0] == PreferenceList::strict({1}));
    CHECK(inst.first().prefs[1] == PreferenceList::strict({0}));
    CHECK(serialize_instance(inst) == "2\n2 \n1");
}

TEST_CASE("roommates degenerate instance")
{
    const Instance inst = parse_instance(ProblemClass::SR, "1\n\n");
    REQUIRE(inst.first().size() == 1);
    CHECK(inst.first().prefs[0].empty());
    CHECK(serialize_instance(inst) == "1\n");
    CHECK(parse_instance(ProblemClass::SR, serialize_instance(inst)) == inst);
}

TEST_CASE("roommates blank line is an empty list")
{
    const Instance inst = parse_instance(ProblemClass::SR, "3\n2\n1\n\n");
    CHECK(inst.first().prefs[2].empty());
    CHECK(parse_instance(ProblemClass::SR, serialize_instance(inst)) == inst);
}

TEST_CASE("student-project instance with lecturer preferences")
{
    const Instance inst = parse_instance(ProblemClass::SPAS, kFig4);
    CHECK(inst.first().size() == 3);
    CHECK(inst.second().size() == 4);
    CHECK(inst.third().size() == 2);
    CHECK(inst.third().capacity[0] == 2);
    CHECK(inst.third().prefs[0] == PreferenceList::strict({0, 1, 2}));
    CHECK(inst.owner(2) == 1);
    CHECK(inst.second().capacity[1] == 2);
    CHECK(parse_instance(ProblemClass::SPAS, serialize_instance(inst)) == inst);
}

TEST_CASE("ties survive a round trip")
{
    const Instance inst = parse_instance(ProblemClass::SPA, kFig5);
    CHECK(inst.first().prefs[0] == PreferenceList({{0, 1}}));
    CHECK(inst.first().prefs[2] == PreferenceList({{0, 2}}));
    CHECK(parse_instance(ProblemClass::SPA, serialize_instance(inst)) == inst);

    const auto props = classify(inst);
    CHECK(props.ties(Role::student));
    CHECK_FALSE(props.lecturer_lists_present);
}

TEST_CASE("two-sided and house allocation grammars")
{
    const char* hr = "3 2\n1: 1 (2)\n2: 2\n3:\n1: 2: 1 2\n2: 1: (2 1)\n";
    const Instance inst = parse_instance(ProblemClass::HR, hr);
    CHECK(inst.second().capacity == std::vector<int>{2, 1});
    CHECK(inst.first().prefs[2].empty());
    CHECK(inst.second().prefs[1] == PreferenceList({{1, 0}}));
    CHECK(parse_instance(ProblemClass::HR, serialize_instance(inst)) == inst);

    const Instance ha = parse_instance(ProblemClass::CHA, "2 2\r\n1: 1 2\r\n2: 1\r\n1: 2\r\n2: 1\r\n");
    CHECK(ha.second().capacity == std::vector<int>{2, 1});
    CHECK(serialize_instance(ha) == "2 2\n1: 1 2\n2: 1\n1: 2\n2: 1\n");
}

TEST_CASE("comment lines are ignored")
{
    const Instance inst = parse_instance(ProblemClass::SM, "# tiny\n1 1\n1: 1\n# hospitals\n1: 1: 1\n");
    CHECK(inst.first().size() == 1);
}

TEST_CASE("malformed input is rejected with a specific error")
{
    using K = ParseError::Kind;
    CHECK(kind_of(ProblemClass::SR, "") == K::empty_instance);
    CHECK(kind_of(ProblemClass::SR, "  \n\n") == K::empty_instance);
    CHECK(kind_of(ProblemClass::SR, "3\n2\n1") == K::count_mismatch);
    CHECK(kind_of(ProblemClass::SR, "2\n2\n1\n3") == K::count_mismatch);
    CHECK(kind_of(ProblemClass::SR, "2\nx\n1") == K::non_numeric);
    CHECK(kind_of(ProblemClass::SR, "3\n(2 3\n1\n1") == K::unbalanced_parentheses);
    CHECK(kind_of(ProblemClass::SR, "3\n2 3)\n1\n1") == K::unbalanced_parentheses);
    CHECK(kind_of(ProblemClass::SR, "2\n5\n1") == K::dangling_reference);
    CHECK(kind_of(ProblemClass::SR, "2\n1\n1") == K::dangling_reference);
    CHECK(kind_of(ProblemClass::SR, "3\n2 2\n1\n1") == K::duplicate_id);
    CHECK(kind_of(ProblemClass::HR, "1 1\n1: 1\n1: 0: 1") == K::non_positive_capacity);
    CHECK(kind_of(ProblemClass::HR, "1 1\n1 1\n1: 1: 1") == K::malformed_line);
    CHECK(kind_of(ProblemClass::HR, "1 1\n2: 1\n1: 1: 1") == K::count_mismatch);
    CHECK(kind_of(ProblemClass::SPAS, "1 1 1\n1: 1\n1: 1: 1\n1: 1: 2") == K::dangling_reference);
    CHECK(kind_of(ProblemClass::SM, "1 1\n1: 1\n1: 2: 1") == K::invalid_instance);
    CHECK(line_of(ProblemClass::SR, "2\n2\nq") == 3);
}

TEST_CASE("classification")
{
    const auto hr = classify(parse_instance(ProblemClass::HR, "2 2\n1: 1 2\n2: 2 1\n1: 1: 1 2\n2: 1: 2 1"));
    CHECK(hr.sm_detected);
    CHECK(hr.complete(Role::resident));
    CHECK_FALSE(hr.ties_present);

    const auto sr = classify(parse_instance(ProblemClass::SR, "2\n2 \n1"));
    CHECK_FALSE(sr.ties_present);
    CHECK(sr.complete(Role::roommate));
    CHECK(classify(parse_instance(ProblemClass::SR, "2\n2 \n1")).roles.size() == sr.roles.size());
}

TEST_CASE("applicable algorithms")
{
    const auto sr = applicable_algorithms(classify(parse_instance(ProblemClass::SR, "2\n2 \n1")));
    CHECK(has(sr, "Minimum Regret Matching"));
    CHECK(has(sr, "Egalitarian Stable Matching"));
    CHECK(sr.front().name == "Minimum Regret Matching");
    CHECK(sr.back().name == "Egalitarian Stable Matching");

    const auto sr_ties = applicable_algorithms(classify(parse_instance(ProblemClass::SR, "3\n(2 3)\n1 3\n1 2")));
    CHECK(has(sr_ties, "Tan-Hsueh"));
    CHECK_FALSE(has(sr_ties, "Egalitarian Stable Matching"));

    const auto sm = applicable_algorithms(
        classify(parse_instance(ProblemClass::SM, "2 2\n1: (1 2)\n2: 1 2\n1: 1: (1 2)\n2: 1: 1 2")));
    CHECK(has(sm, "Kiraly Two-Sided Ties"));
    CHECK(has(sm, "Strongly Stable"));
    CHECK_FALSE(has(sm, "Egalitarian Stable"));
    CHECK_FALSE(has(sm, "Kiraly One-Sided Ties"));

    const auto spa = applicable_algorithms(classify(parse_instance(ProblemClass::SPA, kFig5)));
    CHECK(has(spa, "Cost-Optimal One-Sided"));
    CHECK(has(spa, "Greedy One-Sided"));
    CHECK(has(spa, "Generous One-Sided"));
    CHECK_FALSE(has(spa, "Student-Optimal Stable"));
    CHECK_FALSE(has(spa, "Lecturer-Optimal Stable"));

    const auto spas = applicable_algorithms(classify(parse_instance(ProblemClass::SPAS, kFig4)));
    CHECK(has(spas, "Student-Optimal Stable"));
}

TEST_CASE("catalog names are unique per class and lookups are case-insensitive")
{
    for (auto cls : {ProblemClass::HR, ProblemClass::SM, ProblemClass::HA, ProblemClass::CHA, ProblemClass::SR,
                     ProblemClass::SPA, ProblemClass::SPAS}) {
        auto algs = class_algorithms(cls);
        CHECK_FALSE(algs.empty());
        for (std::size_t i = 0; i < algs.size(); ++i)
            for (std::size_t j = i + 1; j < algs.size(); ++j)
                CHECK(algs[i].name != algs[j].name);
    }
    CHECK(find_algorithm("default stable (no ties)", ProblemClass::SR) == AlgorithmId::irving);
    CHECK(find_algorithm("All Stable Pairs", ProblemClass::SR) == AlgorithmId::stable_pairs_sr);
    CHECK(find_algorithm("All Stable Pairs", ProblemClass::SM) == AlgorithmId::stable_pairs_sm);
    CHECK_FALSE(find_algorithm("Popular", ProblemClass::SR).has_value());
}
