#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>

#include "atlift/graded.hpp"
#include "atlift/matrix.hpp"
#include "atlift/rng.hpp"
#include "atlift/sweep.hpp"
#include "doctest.h"

using namespace atlift;

namespace {

std::vector<Permutation> all_perms(int n) {
    Permutation s(n);
    std::iota(s.begin(), s.end(), 0);
    std::vector<Permutation> out;
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

// Independent sign: bubble the word back to identity, one factor per swap.
int koszul_oracle(Permutation w, const std::vector<int>& degs) {
    int sign = 1;
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] > w[i + 1]) {
                sign = -sign;
                if ((degs[w[i]] & 1) && (degs[w[i + 1]] & 1)) sign = -sign;
                std::swap(w[i], w[i + 1]);
                moved = true;
            }
    }
    return sign;
}

std::vector<Rational> matvec(const RatMat& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.r, Rational(0));
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) out[i] += m.at(i, j) * v[j];
    return out;
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(*parse_rational("3/4") == Rational(3, 4));
    CHECK(*parse_rational("-7") == Rational(-7));
    CHECK(*parse_rational("-6/4") == Rational(-3, 2));
    CHECK(*parse_rational("0") == Rational(0));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("abc"));
    CHECK(!parse_rational("1.5"));
    CHECK(!parse_rational(""));
    CHECK(!parse_rational("/3"));
    CHECK(rat_str(Rational(-3, 2)) == "-3/2");
}

TEST_CASE("permutation sign and composition act on words") {
    for (const auto& s : all_perms(4)) {
        int inv = 0;
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (s[i] > s[j]) ++inv;
        CHECK(perm_sign(s) == (inv % 2 ? -1 : 1));
        CHECK(is_permutation(s));
    }
    CHECK(!is_permutation({0, 0, 2}));
    CHECK(!is_permutation({0, 3}));

    std::vector<char> v{'a', 'b', 'c', 'd'};
    for (const auto& s : all_perms(4))
        for (const auto& t : all_perms(4))
            CHECK(apply_perm(t, apply_perm(s, v)) == apply_perm(compose_perm(s, t), v));
}

TEST_CASE("koszul sign matches the bubble oracle") {
    Rng rng = seeded(11, "koszul");
    for (int n = 1; n <= 5; ++n) {
        auto perms = all_perms(n);
        for (int rep = 0; rep < 6; ++rep) {
            std::vector<int> degs(n);
            for (auto& d : degs) d = static_cast<int>(rng.range(-2, 3));
            for (const auto& s : perms) CHECK(koszul_sign(s, degs) == koszul_oracle(s, degs));
        }
    }
}

TEST_CASE("koszul sign is multiplicative along composition") {
    Rng rng = seeded(12, "koszul-comp");
    auto perms = all_perms(4);
    std::vector<int> degs(4);
    for (int rep = 0; rep < 4; ++rep) {
        for (auto& d : degs) d = static_cast<int>(rng.range(-1, 2));
        for (const auto& s : perms)
            for (const auto& t : perms) {
                std::vector<int> degs_after = apply_perm(s, degs);
                CHECK(koszul_sign(compose_perm(s, t), degs) ==
                      koszul_sign(s, degs) * koszul_sign(t, degs_after));
            }
    }
}

TEST_CASE("shuffles equal the brute-force filter") {
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4 - p; ++q) {
            std::vector<Permutation> brute;
            for (const auto& s : all_perms(p + q)) {
                bool ok = true;
                for (int i = 0; i + 1 < p; ++i) ok = ok && s[i] < s[i + 1];
                for (int i = p; i + 1 < p + q; ++i) ok = ok && s[i] < s[i + 1];
                if (ok) brute.push_back(s);
            }
            auto got = shuffles(p, q);
            std::sort(got.begin(), got.end());
            std::sort(brute.begin(), brute.end());
            CHECK(got == brute);
            CHECK(got.size() == binomial(p + q, p));
        }
}

TEST_CASE("binomial values and recurrence") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(10, 5) == 252);
    for (int n = 1; n <= 20; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("rng streams are reproducible and forks ignore position") {
    Rng a = seeded(42, "stream");
    Rng b = seeded(42, "stream");
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());

    Rng c = seeded(7, "x");
    Rng d = seeded(7, "x");
    for (int i = 0; i < 5; ++i) d.next();
    Rng cf = c.fork("child");
    Rng df = d.fork("child");
    for (int i = 0; i < 5; ++i) CHECK(cf.next() == df.next());

    CHECK(seeded(7, "x").fork("a").next() != seeded(7, "x").fork("b").next());

    Rng e = seeded(3, "bounds");
    for (int i = 0; i < 200; ++i) {
        CHECK(e.below(7) < 7);
        auto v = e.range(-4, 9);
        CHECK(v >= -4);
        CHECK(v <= 9);
        Rational r = e.rational(3, 2);
        CHECK(r.get_den() <= 2);
        CHECK(abs(r.get_num()) <= 3);
        CHECK(!is_zero(e.nonzero_rational()));
    }
}

TEST_CASE("parallel sweep agrees with the serial reference") {
    auto fn = [](std::int64_t i) -> std::string {
        if (i % 97 == 13) return "hit " + std::to_string(i);
        return {};
    };
    for (std::int64_t n : {0, 1, 100, 1000, 5000}) {
        auto s = sweep_serial(n, fn);
        auto p = sweep_parallel(n, fn);
        CHECK(s == p);
        CHECK(sweep(n, fn) == s);
    }
    auto none = sweep_parallel(512, [](std::int64_t) { return std::string{}; });
    CHECK(none.empty());
}

TEST_CASE("rref pivots and idempotence") {
    RatMat m(2, 3);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    m.at(1, 2) = 5;
    RatMat copy = m;
    auto piv = rref(copy);
    CHECK(piv == std::vector<int>{0, 2});
    RatMat again = copy;
    rref(again);
    CHECK(again == copy);
    CHECK(rank(m) == 2);
    CHECK(rank(RatMat::identity(5)) == 5);
}

TEST_CASE("kernel vectors annihilate and count matches nullity") {
    Rng rng = seeded(5, "kernel");
    for (int rep = 0; rep < 20; ++rep) {
        RatMat m(4, 6);
        for (auto& x : m.a) x = rng.rational(3, 2);
        auto ker = kernel_basis(m);
        CHECK(static_cast<int>(ker.size()) == 6 - rank(m));
        for (const auto& v : ker) {
            auto mv = matvec(m, v);
            for (const auto& x : mv) CHECK(is_zero(x));
        }
        CHECK(rank(columns_to_matrix(ker, 6)) == static_cast<int>(ker.size()));
    }
}

TEST_CASE("solve finds solutions exactly when they exist") {
    Rng rng = seeded(6, "solve");
    for (int rep = 0; rep < 20; ++rep) {
        RatMat m(4, 3);
        for (auto& x : m.a) x = rng.rational(3, 2);
        std::vector<Rational> x0(3);
        for (auto& v : x0) v = rng.rational(3, 2);
        auto b = matvec(m, x0);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(matvec(m, *sol) == b);
    }
    RatMat m(2, 2);
    m.at(0, 0) = 1;
    CHECK(!solve(m, {Rational(0), Rational(1)}).has_value());
}
