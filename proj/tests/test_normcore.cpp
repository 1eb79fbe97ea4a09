#include "normkit/error.hpp"
#include "normkit/normcore.hpp"
#include "normkit/numfmt.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

using namespace normkit;

namespace {

const std::vector<double> kBse = {1229, 1264, 1397, 1455, 1483, 1523, 1548, 1594, 1670, 1680};
const std::vector<double> kNngc = {2677, 3083, 3539, 4032, 4452, 5100, 5944, 6913, 6936, 9185};
const std::vector<double> kEnroll = {1645, 2300, 2472, 1105, 7946, 1657, 9742, 4112, 917, 7219};

// Test-side oracles. None of these share code with the library.

int digits_by_text(std::int64_t x) {
    std::string s = std::to_string(x);
    if (s.front() == '-') s.erase(0, 1);
    return static_cast<int>(s.size());
}

int leading_by_division(std::int64_t x) {
    long double m = std::fabs(static_cast<long double>(x));
    while (m >= 10) m = std::floor(m / 10);
    return static_cast<int>(m);
}

// "0." followed by every digit after the first, parsed as a decimal.
double intscale_by_text(std::int64_t x) {
    std::string s = std::to_string(x);
    if (s.front() == '-') s.erase(0, 1);
    if (s.size() == 1) return 0.0;
    return std::stod("0." + s.substr(1));
}

struct MeanStd {
    double mean;
    double std;
};

MeanStd two_pass(const std::vector<double>& v) {
    double sum = 0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return {mean, sd};
}

int brute_force_j(const std::vector<double>& v) {
    double peak = 0;
    for (double x : v) peak = std::max(peak, std::fabs(x));
    int j = 0;
    double p = 1;
    while (peak / p >= 1.0) {
        ++j;
        p *= 10;
    }
    return j;
}

std::vector<double> rounded(const std::vector<double>& v, int places) {
    std::vector<double> out;
    for (double x : v) out.push_back(std::stod(numfmt::fixed(x, places)));
    return out;
}

template <class Fn>
Errc code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected normkit::Error");
    return Errc::IoError;
}

}  // namespace

TEST_SUITE("min_max") {
    TEST_CASE("reproduces the nngc and enrollment reference columns") {
        auto nngc = min_max_normalize({"nngc", kNngc});
        CHECK(nngc.values[0] == 0.0);
        CHECK(nngc.values[9] == 1.0);
        CHECK(std::fabs(nngc.values[1] - 0.062) <= 0.0005);
        CHECK(std::fabs(nngc.values[6] - 0.502) <= 0.0005);

        auto enroll = min_max_normalize({"enroll", kEnroll});
        CHECK(enroll.values[8] == 0.0);
        CHECK(enroll.values[6] == 1.0);
        CHECK(std::fabs(enroll.values[1] - 0.157) <= 0.0005);
        CHECK(std::fabs(enroll.values[4] - 0.796) <= 0.001);

        const auto& p = nngc.params_as<MinMaxParams>();
        CHECK(p == MinMaxParams{2677, 9185, 0, 1});
        CHECK(nngc.method() == Method::MinMax);
    }

    TEST_CASE("constant column maps to the lower boundary") {
        auto r = min_max_normalize({"c", {5, 5, 5}});
        CHECK(r.values == std::vector<double>{0, 0, 0});
        auto shifted = min_max_normalize({"c", {5, 5}}, {-2, 3});
        CHECK(shifted.values == std::vector<double>{-2, -2});
    }

    TEST_CASE("endpoints land exactly on an arbitrary boundary") {
        auto r = min_max_normalize({"x", {0, 10}}, {-1, 1});
        CHECK(r.values == std::vector<double>{-1, 1});

        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> val(-1e6, 1e6);
        std::uniform_real_distribution<double> bnd(-10, 10);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<double> v(1 + trial % 40);
            for (double& x : v) x = val(rng);
            double c = bnd(rng), d = bnd(rng);
            if (c == d) continue;
            if (c > d) std::swap(c, d);
            auto out = min_max_normalize({"x", v}, {c, d});
            const auto lo = std::min_element(v.begin(), v.end()) - v.begin();
            const auto hi = std::max_element(v.begin(), v.end()) - v.begin();
            CHECK(out.values[static_cast<std::size_t>(lo)] == c);
            if (v.size() > 1 && v[static_cast<std::size_t>(lo)] != v[static_cast<std::size_t>(hi)]) {
                CHECK(out.values[static_cast<std::size_t>(hi)] == d);
            }
            for (double y : out.values) {
                CHECK(y >= c - 1e-12);
                CHECK(y <= d + 1e-12);
            }
        }
    }

    TEST_CASE("order is preserved") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> val(-1e3, 1e3);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(2 + trial % 50);
            for (double& x : v) x = val(rng);
            auto out = min_max_normalize({"x", v});
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t k = 0; k < v.size(); ++k) {
                    if (v[i] <= v[k]) CHECK(out.values[i] <= out.values[k]);
                }
            }
        }
    }

    TEST_CASE("denormalize") {
        const MinMaxParams p{2677, 9185, 0, 1};
        // Reference value 0.062 is rounded; its inverse lands within half a
        // display unit (0.0005 * 6508) of the original 3083.
        auto back = min_max_denormalize({"n", {0.062, 0.0, 1.0}, p}, p);
        CHECK(back.values[0] == doctest::Approx(3080.496).epsilon(1e-12));
        CHECK(std::fabs(back.values[0] - 3083) <= 0.0005 * 6508);
        CHECK(back.values[1] == 2677);
        CHECK(back.values[2] == 9185);
    }

    TEST_CASE("round trip within 1e-9 relative") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> val(-1e9, 1e9);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<double> v(2 + trial % 30);
            for (double& x : v) x = val(rng);
            auto n = min_max_normalize({"x", v}, {-3, 5});
            auto back = min_max_denormalize(n, n.params_as<MinMaxParams>());
            const double scale = *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
            for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::fabs(back.values[i] - v[i]) <= 1e-9 * scale);
        }
    }

    TEST_CASE("errors") {
        CHECK(code_of([] { min_max_normalize({"e", {}}); }) == Errc::EmptyColumn);
        CHECK(code_of([] { min_max_normalize({"e", {1, NAN}}); }) == Errc::NonFiniteValue);
        CHECK(code_of([] { min_max_normalize({"e", {1, 2}}, {0, 0}); }) == Errc::InvalidBoundary);
        CHECK(code_of([] { min_max_normalize({"e", {1, 2}}, {1, 0}); }) == Errc::InvalidBoundary);
        const MinMaxParams flat{5, 5, 0, 1};
        CHECK(code_of([&] { min_max_denormalize({"e", {0}, flat}, flat); }) == Errc::DegenerateParams);
        const MinMaxParams bad{0, 1, 1, 1};
        CHECK(code_of([&] { min_max_denormalize({"e", {0}, bad}, bad); }) == Errc::InvalidBoundary);
    }
}

TEST_SUITE("z_score") {
    TEST_CASE("identical values map to zero") {
        auto r = z_score_normalize({"z", {7, 7, 7, 7}});
        CHECK(r.values == std::vector<double>{0, 0, 0, 0});
        CHECK(r.params_as<ZScoreParams>() == ZScoreParams{7, 0, 4});

        // Values whose naive mean is not exactly representable.
        auto tenth = z_score_normalize({"z", {0.1, 0.1, 0.1}});
        CHECK(tenth.values == std::vector<double>{0, 0, 0});
        CHECK(tenth.params_as<ZScoreParams>().std == 0.0);
    }

    TEST_CASE("hand-worked example") {
        auto r = z_score_normalize({"z", {1, 2, 3}});
        CHECK(r.values == std::vector<double>{-1, 0, 1});
        CHECK(r.params_as<ZScoreParams>() == ZScoreParams{2, 1, 3});
    }

    TEST_CASE("single element") {
        auto r = z_score_normalize({"z", {42}});
        CHECK(r.values == std::vector<double>{0});
        CHECK(r.params_as<ZScoreParams>() == ZScoreParams{42, 0, 1});
    }

    TEST_CASE("matches the two-pass oracle and standardizes") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> val(-500, 500);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(2 + static_cast<std::size_t>(rng() % 999));
            for (double& x : v) x = val(rng);
            auto r = z_score_normalize({"z", v});
            const MeanStd o = two_pass(v);
            const auto& p = r.params_as<ZScoreParams>();
            CHECK(p.mean == doctest::Approx(o.mean).epsilon(1e-12));
            CHECK(p.std == doctest::Approx(o.std).epsilon(1e-12));
            for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::fabs(r.values[i] - (v[i] - o.mean) / o.std) <= 1e-12);
            const MeanStd out = two_pass(r.values);
            CHECK(std::fabs(out.mean) <= 1e-9);
            CHECK(std::fabs(out.std - 1.0) <= 1e-9);
        }
    }

    TEST_CASE("tiny and huge spreads keep a nonzero std") {
        auto tiny = z_score_normalize({"z", {1e-200, 2e-200, 3e-200}});
        CHECK(tiny.params_as<ZScoreParams>().std > 0);
        CHECK(tiny.values[2] == doctest::Approx(1.0));
        auto huge = z_score_normalize({"z", {-1e300, 1e300}});
        CHECK(huge.values[0] == doctest::Approx(-std::sqrt(0.5)));
    }

    TEST_CASE("denormalize") {
        const ZScoreParams p{2, 1, 3};
        CHECK(z_score_denormalize({"z", {0}, p}, p).values == std::vector<double>{2});
        CHECK(z_score_denormalize({"z", {-1, 0, 1}, p}, p).values == std::vector<double>{1, 2, 3});
        const ZScoreParams flat{7, 0, 3};
        CHECK(z_score_denormalize({"z", {0, 0, 0}, flat}, flat).values == std::vector<double>{7, 7, 7});
        const ZScoreParams bad{7, -1, 3};
        CHECK(code_of([&] { z_score_denormalize({"z", {0}, bad}, bad); }) == Errc::DegenerateParams);
    }

    TEST_CASE("errors") {
        CHECK(code_of([] { z_score_normalize({"z", {}}); }) == Errc::EmptyColumn);
        CHECK(code_of([] { z_score_normalize({"z", {INFINITY}}); }) == Errc::NonFiniteValue);
    }
}

TEST_SUITE("decimal_scaling") {
    TEST_CASE("nngc sample originals need j = 4") {
        auto r = decimal_scaling_normalize({"d", kNngc});
        CHECK(r.params_as<DecimalScalingParams>().j == 4);
        CHECK(brute_force_j(kNngc) == 4);
        CHECK(r.values.front() == 0.2677);
        CHECK(r.values.back() == 0.9185);
    }

    TEST_CASE("zero column and signs") {
        auto zeros = decimal_scaling_normalize({"d", {0, 0}});
        CHECK(zeros.params_as<DecimalScalingParams>().j == 0);
        CHECK(zeros.values == std::vector<double>{0, 0});

        auto mixed = decimal_scaling_normalize({"d", {-950, 120}});
        CHECK(mixed.params_as<DecimalScalingParams>().j == 3);
        CHECK(mixed.values == std::vector<double>{-0.95, 0.12});

        CHECK(decimal_scaling_normalize({"d", {5}}).params_as<DecimalScalingParams>().j == 1);
        CHECK(decimal_scaling_normalize({"d", {1000}}).params_as<DecimalScalingParams>().j == 4);
        CHECK(decimal_scaling_normalize({"d", {0.5}}).params_as<DecimalScalingParams>().j == 0);
    }

    TEST_CASE("minimal exponent, strict bound, order and sign") {
        std::mt19937_64 rng(23);
        std::uniform_int_distribution<int> exp(-3, 14);
        std::uniform_real_distribution<double> mant(-1, 1);
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> v(1 + trial % 20);
            const double scale = std::pow(10.0, exp(rng));
            for (double& x : v) x = mant(rng) * scale;
            auto r = decimal_scaling_normalize({"d", v});
            const int j = r.params_as<DecimalScalingParams>().j;
            CHECK(j == brute_force_j(v));
            double peak = 0;
            for (double x : v) peak = std::max(peak, std::fabs(x));
            for (std::size_t i = 0; i < v.size(); ++i) {
                CHECK(std::fabs(r.values[i]) < 1.0);
                CHECK(std::signbit(r.values[i]) == std::signbit(v[i]));
                for (std::size_t k = 0; k < v.size(); ++k) {
                    if (v[i] < v[k]) CHECK(r.values[i] <= r.values[k]);
                }
            }
            if (j > 0) CHECK(peak / power_of_ten(j - 1) >= 1.0);
        }
    }

    TEST_CASE("values just under a power of ten") {
        const double below = std::nextafter(1000.0, 0.0);
        auto r = decimal_scaling_normalize({"d", {below}});
        CHECK(std::fabs(r.values[0]) < 1.0);
        CHECK(r.params_as<DecimalScalingParams>().j == brute_force_j({below}));
    }

    TEST_CASE("denormalize") {
        const DecimalScalingParams four{4};
        CHECK(decimal_scaling_denormalize({"d", {0.9185}, four}, four).values[0] == 9185);
        CHECK(decimal_scaling_denormalize({"d", {0}, DecimalScalingParams{7}}, DecimalScalingParams{7}).values[0] == 0);
        const DecimalScalingParams three{3};
        CHECK(decimal_scaling_denormalize({"d", {-0.95}, three}, three).values[0] == -950);
        const DecimalScalingParams neg{-1};
        CHECK(code_of([&] { decimal_scaling_denormalize({"d", {0}, neg}, neg); }) == Errc::OutOfRange);
    }

    TEST_CASE("round trip within 1e-12 relative") {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> val(-1e7, 1e7);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> v(1 + trial % 25);
            for (double& x : v) x = val(rng);
            auto r = decimal_scaling_normalize({"d", v});
            auto back = decimal_scaling_denormalize(r, r.params_as<DecimalScalingParams>());
            for (std::size_t i = 0; i < v.size(); ++i) CHECK(back.values[i] == doctest::Approx(v[i]).epsilon(1e-12));
        }
    }
}

TEST_SUITE("integer_scaling") {
    TEST_CASE("digit_count and leading_digit") {
        CHECK(digit_count(1229) == 4);
        CHECK(digit_count(0) == 1);
        CHECK(digit_count(-917) == 3);
        CHECK(leading_digit(9185) == 9);
        CHECK(leading_digit(0) == 0);
        CHECK(leading_digit(-2300) == 2);
        CHECK(digit_count(INT64_MIN) == 19);
        CHECK(leading_digit(INT64_MIN) == 9);
        CHECK(digit_count(INT64_MAX) == 19);
    }

    TEST_CASE("digit helpers agree with text and division oracles") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 20000; ++i) {
            const int width = 1 + static_cast<int>(rng() % 18);
            std::int64_t x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::pow(10.0, width)));
            if (rng() & 1) x = -x;
            CHECK(digit_count(x) == digits_by_text(x));
            CHECK(leading_digit(x) == leading_by_division(x));
        }
    }

    TEST_CASE("sensex, nngc and enrollment integer-scaling columns") {
        const std::vector<double> bse = {0.229, 0.264, 0.397, 0.455, 0.483, 0.523, 0.548, 0.594, 0.670, 0.680};
        const std::vector<double> nngc = {0.677, 0.083, 0.539, 0.032, 0.452, 0.100, 0.944, 0.913, 0.936, 0.185};
        const std::vector<double> enroll = {0.645, 0.300, 0.472, 0.105, 0.946, 0.657, 0.742, 0.112, 0.170, 0.219};
        CHECK(rounded(integer_scaling_normalize({"bse", kBse}).values, 3) == bse);
        CHECK(rounded(integer_scaling_normalize({"nngc", kNngc}).values, 3) == nngc);
        CHECK(rounded(integer_scaling_normalize({"enroll", kEnroll}).values, 3) == enroll);

        auto meta = integer_scaling_normalize({"bse", kBse}).params_as<IntegerScalingMetadata>();
        CHECK(meta.records.size() == 10);
        for (const auto& r : meta.records) CHECK(r == DigitRecord{1, 4, 1});
    }

    TEST_CASE("edge elements") {
        auto seven = integer_scaling_normalize({"i", {7}});
        CHECK(seven.values[0] == 0.0);
        auto zero = integer_scaling_normalize({"i", {0}});
        CHECK(zero.values[0] == 0.0);
        CHECK(zero.params_as<IntegerScalingMetadata>().records[0] == DigitRecord{1, 1, 0});
        auto neg = integer_scaling_normalize({"i", {-2677}});
        CHECK(neg.values[0] == 0.677);
        CHECK(neg.params_as<IntegerScalingMetadata>().records[0] == DigitRecord{-1, 4, 2});
    }

    TEST_CASE("matches the text oracle exactly and stays in [0, 1)") {
        for (std::int64_t x = 0; x <= 1000000; ++x) {
            const double y = integer_scale(x);
            REQUIRE(y >= 0.0);
            REQUIRE(y < 1.0);
            if (x % 997 == 0) REQUIRE(y == intscale_by_text(x));
            if (x <= 9) REQUIRE(y == 0.0);
        }
        CHECK(integer_scale(-9) == 0.0);
        CHECK(integer_scale(INT64_MIN) < 1.0);
        CHECK(integer_scale(INT64_MAX) < 1.0);
    }

    TEST_CASE("element-local: permutation and singleton") {
        std::mt19937_64 rng(37);
        std::uniform_int_distribution<std::int64_t> val(-99999999, 99999999);
        std::vector<double> v(60);
        for (double& x : v) x = static_cast<double>(val(rng));
        auto whole = integer_scaling_normalize({"i", v});
        std::vector<std::size_t> perm(v.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> shuffled;
        for (auto i : perm) shuffled.push_back(v[i]);
        auto p = integer_scaling_normalize({"i", shuffled});
        const auto& meta = whole.params_as<IntegerScalingMetadata>().records;
        const auto& pmeta = p.params_as<IntegerScalingMetadata>().records;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            CHECK(p.values[k] == whole.values[perm[k]]);
            CHECK(pmeta[k] == meta[perm[k]]);
            CHECK(integer_scaling_normalize({"s", {v[perm[k]]}}).values[0] == whole.values[perm[k]]);
        }
    }

    TEST_CASE("exact round trip") {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<std::int64_t> v(1 + rng() % 30);
            for (auto& x : v) {
                const int width = 1 + static_cast<int>(rng() % 12);
                x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::pow(10.0, width)));
                if (rng() & 1) x = -x;
            }
            auto n = integer_scaling_normalize("i", v);
            REQUIRE(integer_scaling_restore(n.values, n.params_as<IntegerScalingMetadata>()) == v);
        }
    }

    TEST_CASE("denormalize examples") {
        const IntegerScalingMetadata one{{{1, 4, 1}}};
        CHECK(integer_scaling_denormalize({"i", {0.229}, one}, one).values[0] == 1229);
        const IntegerScalingMetadata zero{{{1, 1, 0}}};
        CHECK(integer_scaling_denormalize({"i", {0.0}, zero}, zero).values[0] == 0);
        const IntegerScalingMetadata neg{{{-1, 4, 2}}};
        CHECK(integer_scaling_denormalize({"i", {0.677}, neg}, neg).values[0] == -2677);
    }

    TEST_CASE("input does not change") {
        const NumericColumn col{"i", {12, -3, 450}};
        const NumericColumn copy = col;
        integer_scaling_normalize(col);
        min_max_normalize(col);
        z_score_normalize(col);
        decimal_scaling_normalize(col);
        CHECK(col == copy);
    }

    TEST_CASE("errors") {
        CHECK(code_of([] { integer_scaling_normalize({"i", {}}); }) == Errc::EmptyColumn);
        try {
            integer_scaling_normalize({"i", {1, 2, 12.5}});
            FAIL("expected NonIntegerValue");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NonIntegerValue);
            REQUIRE(e.where().has_value());
            CHECK(e.where()->row == 3);
            CHECK(std::string(e.what()).find("NonIntegerValue") == 0);
        }
        CHECK(code_of([] { integer_scaling_normalize({"i", {1e19}}); }) == Errc::OutOfRange);

        const IntegerScalingMetadata two{{{1, 2, 1}, {1, 2, 1}}};
        CHECK(code_of([&] { integer_scaling_denormalize({"i", {0.1}, two}, two); }) == Errc::LengthMismatch);
        const IntegerScalingMetadata one{{{1, 2, 1}}};
        CHECK(code_of([&] { integer_scaling_denormalize({"i", {1.0}, one}, one); }) == Errc::OutOfRange);
        CHECK(code_of([&] { integer_scaling_denormalize({"i", {-0.1}, one}, one); }) == Errc::OutOfRange);
        const IntegerScalingMetadata bogus{{{1, 3, 0}}};
        CHECK(code_of([&] { integer_scaling_denormalize({"i", {0.1}, bogus}, bogus); }) == Errc::OutOfRange);
    }
}

TEST_CASE("method tags and dispatch") {
    for (Method m : {Method::MinMax, Method::ZScore, Method::Decimal, Method::IntScale}) {
        CHECK(parse_method(to_string(m)) == m);
        const NumericColumn col{"x", {3, 14, 159}};
        auto n = normalize(col, m);
        CHECK(n.method() == m);
        auto back = denormalize(n, n.params);
        for (std::size_t i = 0; i < col.values.size(); ++i) CHECK(back.values[i] == doctest::Approx(col.values[i]));
    }
    CHECK(code_of([] { parse_method("robust"); }) == Errc::UnknownMethod);
}
