#include "doctest.h"

#include "matchkit/generator.hpp"
#include "matchkit/instance_io.hpp"

#include <cmath>

using namespace matchkit;

TEST_CASE("two roommates with complete lists")
{
    GeneratorParams p;
    p.num_first = 2;
    auto batch = generate(ProblemClass::SR, p);
    REQUIRE(batch.size() == 1);
    CHECK(serialize_instance(batch[0]) == "2\n2 \n1");

    p.num_first = 1;
    CHECK(serialize_instance(generate_one(ProblemClass::SR, p, 0)) == "1\n");
}

TEST_CASE("popularity weights interpolate linearly")
{
    auto w = popularity_weights(5, 3.0);
    CHECK(w.front() == doctest::Approx(3.0));
    CHECK(w.back() == doctest::Approx(1.0));
    CHECK(w[2] == doctest::Approx(2.0));
    for (double x : popularity_weights(4, 1.0))
        CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("capacity splits")
{
    Rng rng(7);
    CHECK(split_capacity(rng, 10, 7, true) == std::vector<int>{2, 2, 2, 1, 1, 1, 1});
    for (int t = 0; t < 50; ++t) {
        auto caps = split_capacity(rng, 20, 6, false);
        int sum = 0;
        for (int c : caps) {
            CHECK(c >= 1);
            sum += c;
        }
        CHECK(sum == 20);
    }
    CHECK_THROWS_AS(split_capacity(rng, 3, 4, true), DomainError);
}

TEST_CASE("experiment family shape")
{
    const Instance inst = experiment_family(1, 3);
    CHECK(inst.first().size() == 5);
    CHECK(inst.second().size() == 7);
    CHECK(inst.third().size() == 1);
    CHECK(inst.second().capacity == std::vector<int>{2, 2, 2, 1, 1, 1, 1});
    CHECK(inst.third().capacity == std::vector<int>{7});
    CHECK(inst.problem_class() == ProblemClass::SPAS);
    for (const auto& l : inst.first().prefs)
        CHECK(l.length() == 6);

    const Instance big = experiment_family(10, 42);
    CHECK(big.owners()[6] == 0);
    CHECK(big.owners()[7] == 1);
    CHECK(serialize_instance(big) == serialize_instance(experiment_family(10, 42)));
}

TEST_CASE("generated instances round-trip and respect bounds")
{
    for (auto cls : {ProblemClass::HR, ProblemClass::SM, ProblemClass::HA, ProblemClass::CHA, ProblemClass::SR,
                     ProblemClass::SPA, ProblemClass::SPAS}) {
        GeneratorParams p;
        p.num_first = 6;
        p.num_second = cls == ProblemClass::SM ? 6 : 4;
        p.num_third = 2;
        p.second_capacity = 7;
        p.third_capacity = 5;
        p.lower = 1;
        p.upper = 3;
        p.density = 0.6;
        p.probability_of_ties = 0.3;
        p.skewness = 2.5;
        p.secondary_skewness = 1.5;
        p.even_capacities = false;
        p.num_instances = 20;
        p.seed = 11;
        const auto batch = generate(cls, p);
        const auto again = generate(cls, p);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const std::string text = serialize_instance(batch[i]);
            CHECK(text == serialize_instance(again[i]));
            CHECK(parse_instance(cls, text) == batch[i]);
            if (cls != ProblemClass::SR)
                for (const auto& l : batch[i].first().prefs) {
                    CHECK(l.length() >= 1);
                    CHECK(l.length() <= 3);
                }
        }
    }
}

TEST_CASE("roommate acceptability is symmetric")
{
    GeneratorParams p;
    p.num_first = 9;
    p.density = 0.5;
    p.seed = 5;
    p.num_instances = 10;
    for (const auto& inst : generate(ProblemClass::SR, p))
        for (int a = 0; a < 9; ++a)
            for (int b = 0; b < 9; ++b)
                CHECK((inst.rank(Side::first, a, b) > 0) == (inst.rank(Side::first, b, a) > 0));
}

TEST_CASE("invalid parameters are rejected")
{
    GeneratorParams p;
    p.num_first = 3;
    p.num_second = 2;
    p.upper = 5;
    CHECK_THROWS_AS(generate(ProblemClass::HR, p), DomainError);
    p.upper = -1;
    CHECK_THROWS_AS(generate(ProblemClass::SM, p), DomainError);
    p.probability_of_ties = 1.5;
    CHECK_THROWS_AS(generate(ProblemClass::HR, p), DomainError);
    GeneratorParams sr;
    sr.num_first = 4;
    sr.density = 0;
    CHECK_THROWS_AS(generate(ProblemClass::SR, sr), DomainError);
}

TEST_CASE("hospitals rank exactly the residents that list them")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GeneratorParams p;
        p.num_first = 3 + static_cast<int>(seed % 5);
        p.num_second = 2 + static_cast<int>(seed % 3);
        p.second_capacity = p.num_second * 2;
        p.lower = 1;
        p.upper = p.num_second;
        p.seed = seed;
        const Instance inst = generate_one(ProblemClass::HR, p, 0);
        for (int h = 0; h < inst.second().size(); ++h)
            for (int r = 0; r < inst.first().size(); ++r)
                CHECK((inst.rank(Side::first, r, h) > 0) == (inst.rank(Side::second, h, r) > 0));
    }
}
