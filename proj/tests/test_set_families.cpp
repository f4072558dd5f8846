#include <doctest.h>

#include <cmath>

#include "swclab/james.hpp"
#include "swclab/set_families.hpp"

using namespace swclab;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::vector<std::vector<int>> all_subsets_up_to(int n, int max_size) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(unsigned(mask)) > max_size) continue;
        std::vector<int> s;
        for (int b = 0; b < n; ++b)
            if ((mask >> b) & 1) s.push_back(b + 1);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("schreier enumeration") {
    auto s1 = schreier(1);
    CHECK(s1.sets == std::vector<std::vector<int>>{{}, {1}});

    auto s4 = schreier(4);
    CHECK(s4.size() == 8);
    CHECK(s4.sets == std::vector<std::vector<int>>{{}, {1}, {2}, {2, 3}, {2, 4}, {3}, {3, 4}, {4}});

    for (const auto& f : schreier(9).sets)
        if (!f.empty()) CHECK(int(f.size()) <= f.front());

    // growth beyond 2^{N/2 - 1}
    for (int n : {4, 6, 8, 10, 12}) {
        const int count = schreier(n).size();
        CHECK(double(count) > std::pow(2.0, n / 2.0 - 1.0));
    }
    CHECK(schreier(10).size() == 144);
    CHECK(schreier(12).size() == 377);
}

TEST_CASE("block family structure") {
    CHECK(block_set(1, 1) == std::vector<int>{1});
    CHECK(block_set(3, 2) == std::vector<int>{4, 5});
    auto b3 = block_family(3);
    CHECK(b3.size() == 7);
    CHECK(b3.universe == 6);
    auto b2 = block_family(2);
    CHECK(b2.sets == std::vector<std::vector<int>>{{}, {1}, {2}, {2, 3}});
}

TEST_CASE("bounded cardinality family") {
    CHECK(bounded_card_family(5, 0).sets == std::vector<std::vector<int>>{{}});
    CHECK(bounded_card_family(4, 1).size() == 5);
    CHECK(bounded_card_family(5, 2).size() == 16);
}

TEST_CASE("trace counting") {
    CHECK(trace_count(block_family(3), {1, 2}).count == 3);
    CHECK(trace_count(schreier(4), {1, 2, 3, 4}).count == 8);
    CHECK(trace_count(schreier(4), {}).count == 1);
    CHECK_THROWS_AS(trace_count(schreier(4), {5}), std::invalid_argument);
    CHECK_THROWS_AS(trace_count(schreier(4), {2, 2}), std::invalid_argument);
}

TEST_CASE("trace count never exceeds the family size or 2^|A|") {
    auto fams = std::vector<SetFamily>{schreier(6), block_family(3), bounded_card_family(6, 2)};
    for (const auto& fam : fams)
        for (const auto& a : all_subsets_up_to(std::min(fam.universe, 6), 6)) {
            const int c = trace_count(fam, a).count;
            CHECK(c <= fam.size());
            CHECK(c <= (1 << a.size()));
        }
}

TEST_CASE("block family traces are |A| + 1, exhaustively") {
    for (int n_max : {2, 3, 4, 5}) {
        auto fam = block_family(n_max);
        for (const auto& a : all_subsets_up_to(std::min(fam.universe, 15), 8))
            CHECK(trace_count(fam, a).count == int(a.size()) + 1);
    }
}

TEST_CASE("block family points sit at pairwise sup-distance 1") {
    auto pts = to_points(block_family(4));
    for (int i = 1; i < pts.size(); ++i)
        for (int j = i + 1; j < pts.size(); ++j)
            CHECK(norm_dist(pts[i], pts[j], pts.norm) == doctest::Approx(1.0));
}

TEST_CASE("polynomial trace test") {
    SUBCASE("bounded family passes a quadratic bound") {
        auto fam = bounded_card_family(12, 2);
        auto res = polynomial_trace_test(fam, 2.0, 2.0, all_subsets_up_to(12, 6));
        CHECK(res.pass);
    }
    SUBCASE("schreier defeats fixed polynomial bounds once N is large enough") {
        std::vector<int> full;
        for (int i = 1; i <= 12; ++i) full.push_back(i);
        for (double p : {1.0, 2.0}) {  // 377 > 12^2; the cubic crossover sits past N = 12
            auto res = polynomial_trace_test(schreier(12), p, 1.0, {full});
            CHECK_FALSE(res.pass);
            CHECK(res.worst_count == 377);
        }
        auto cubic = polynomial_trace_test(schreier(12), 3.0, 1.0, {full});
        CHECK(cubic.pass);  // 377 < 1728: exponential growth needs more room
    }
    SUBCASE("the one-trace family passes for C >= 1") {
        SetFamily trivial;
        trivial.universe = 3;
        trivial.sets = {{}};
        auto res = polynomial_trace_test(trivial, 1.0, 1.0, {{}, {1}, {1, 2, 3}});
        CHECK(res.pass);
    }
}

TEST_CASE("vc_extract finds maximum shattered sets") {
    SUBCASE("schreier(6) shatters {3,4,5}") {
        auto r = vc_extract(schreier(6), {3, 4, 5});
        CHECK(r.witness.s == std::vector<int>{3, 4, 5});
        CHECK(r.witness.witness_family_index.size() == 8);
    }
    SUBCASE("bounded family has shattering number p") {
        for (int p : {1, 2, 3}) {
            auto fam = bounded_card_family(6, p);
            std::vector<int> a;
            for (int i = 1; i <= 6; ++i) a.push_back(i);
            auto r = vc_extract(fam, a);
            CHECK(int(r.witness.s.size()) == p);
        }
    }
    SUBCASE("the one-trace family shatters only the empty set") {
        SetFamily trivial;
        trivial.universe = 2;
        trivial.sets = {{}};
        auto r = vc_extract(trivial, {1, 2});
        CHECK(r.witness.s.empty());
        CHECK(r.chain_points.empty());
    }
    SUBCASE("witnesses really witness") {
        auto fam = schreier(8);
        std::vector<int> a{4, 5, 6, 7, 8};
        auto r = vc_extract(fam, a);
        const auto& s = r.witness.s;
        for (size_t mask = 0; mask < r.witness.witness_family_index.size(); ++mask) {
            const auto& f = fam.sets[size_t(r.witness.witness_family_index[mask])];
            for (size_t b = 0; b < s.size(); ++b) {
                const bool want = (mask >> b) & 1;
                CHECK(std::binary_search(f.begin(), f.end(), s[b]) == want);
            }
        }
    }
}

TEST_CASE("sauer-shelah pipeline: trace overflow forces a shattered set and a James chain") {
    auto fam = schreier(10);
    int triggered = 0;
    for (const auto& a : all_subsets_up_to(10, 6)) {
        const int tc = trace_count(fam, a).count;
        for (int p = 1; p <= 4; ++p) {
            long long bound = 0;
            for (int j = 0; j < p; ++j) bound += binom(int(a.size()), j);
            if (tc <= bound) continue;
            ++triggered;
            auto r = vc_extract(fam, a);
            CHECK(int(r.witness.s.size()) >= p);
            if (r.chain_points.size() >= 2 && r.chain_points.size() <= 6) {
                auto cert = separation_value(r.chain_points.points, r.chain_points.norm);
                CHECK(cert.theta == doctest::Approx(1.0).epsilon(1e-8));
            }
        }
    }
    CHECK(triggered > 0);
}

TEST_CASE("slicing functionals isolate their block point") {
    SUBCASE("explicit small cases") {
        auto s21 = slicing_functional(2, 1, 2);
        CHECK(s21.a == Vec{0, 1, -1});
        CHECK(s21.level == doctest::Approx(0.5));
        CHECK(s21.verified);

        auto s11 = slicing_functional(1, 1, 2);
        CHECK(s11.a == Vec{1, 0, 0});
        CHECK(s11.verified);
    }
    SUBCASE("all (n, m) with n <= 4 verify pointwise") {
        for (int n = 1; n <= 4; ++n)
            for (int m = 1; m <= n; ++m) {
                auto s = slicing_functional(n, m, 4);
                CHECK(s.verified);
                // the origin always stays strictly below the threshold
                CHECK(0.0 < s.level);
            }
    }
    CHECK_THROWS_AS(slicing_functional(3, 4, 4), std::invalid_argument);
}

TEST_CASE("to_points characteristic vectors") {
    SetFamily trivial;
    trivial.universe = 3;
    trivial.sets = {{}};
    auto z = to_points(trivial);
    CHECK(z.points == std::vector<Vec>{zeros(3)});

    auto b2 = to_points(block_family(2));
    CHECK(b2.size() == 4);
    CHECK(b2.dim == 3);
    CHECK(b2.points == std::vector<Vec>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 1}});

    auto s3 = to_points(schreier(3));
    CHECK(s3.size() == 5);
    for (int i = 1; i < s3.size(); ++i)
        for (int j = i + 1; j < s3.size(); ++j)
            CHECK(norm_dist(s3[i], s3[j], s3.norm) == doctest::Approx(1.0));
}
