#include "ldpp/analysis.hpp"

#include "fixtures.hpp"
#include "ldpp/enumeration.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ldpp;

namespace {

const PrivacyParameter kT2(Rational(2));

// Loose positions of an arbitrary matrix straight from the definition,
// usable on non-stochastic matrices like the tilde form.
std::vector<std::pair<std::size_t, std::size_t>> matrix_loose(const Matrix& a, const Rational& t) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Rational lo = a(0, j), hi = a(0, j);
        for (std::size_t i = 1; i < a.rows(); ++i) {
            if (a(i, j) < lo) lo = a(i, j);
            if (a(i, j) > hi) hi = a(i, j);
        }
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (a(i, j) != t * lo && a(i, j) != hi / t) out.push_back({i, j});
    }
    return out;
}

}  // namespace

TEST_CASE("support finds the nonzero columns") {
    CHECK(support(Mechanism(fixtures::corner(3, 0))) == std::vector<std::size_t>{0});
    CHECK(support(Mechanism(fixtures::loose_entry_3x3())) == std::vector<std::size_t>{0, 1, 2});
    CHECK(support(Mechanism(fixtures::two_column_4x4(Rational(2)))) ==
          std::vector<std::size_t>{0, 2});
    CHECK(support(Mechanism(fixtures::loose_extreme_5x5())) ==
          std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("loose entries of the worked examples") {
    using Pos = std::vector<std::pair<std::size_t, std::size_t>>;
    CHECK(loose_entries(Mechanism(fixtures::loose_entry_3x3()), kT2) == Pos{{1, 0}});
    // a single nonzero column leaves every one of its entries loose
    CHECK(loose_entries(Mechanism(fixtures::corner(3, 0)), kT2) == Pos{{0, 0}, {1, 0}, {2, 0}});
    CHECK(loose_entries(Mechanism(fixtures::loose_extreme_5x5()), kT2) == Pos{{4, 2}});
    CHECK(loose_entries(Mechanism(fixtures::two_column_4x4(Rational(2))), kT2).empty());
}

TEST_CASE("zero columns contribute no loose entries") {
    const Mechanism m(fixtures::two_column_4x4(Rational(3)));
    for (const auto& [i, j] : loose_entries(m, PrivacyParameter(Rational(3)))) {
        CHECK(j != 1);
        CHECK(j != 3);
    }
}

TEST_CASE("tilde normalization of the 3x3 worked example") {
    const TildeForm f = tilde_normalize(Mechanism(fixtures::loose_entry_3x3()));
    CHECK(f.tilde == Matrix::parse("2 1 1; 3/2 2 1; 1 1 2"));
    CHECK(f.mins == Vector{Rational(2, 7), Rational(1, 7), Rational(2, 7)});
    CHECK(f.mins_inv == Vector{Rational(7, 2), Rational(7), Rational(7, 2)});
}

TEST_CASE("tilde normalization of corners and the two-column example") {
    const TildeForm fc = tilde_normalize(Mechanism(fixtures::corner(3, 0)));
    CHECK(fc.tilde == fixtures::corner(3, 0));
    CHECK(fc.mins == Vector{1, 0, 0});

    const Rational t(2);
    const TildeForm f2 = tilde_normalize(Mechanism(fixtures::two_column_4x4(t)));
    CHECK(f2.tilde == Matrix::parse("1 0 2 0; 1 0 2 0; 2 0 1 0; 1 0 2 0"));
    CHECK(f2.mins == Vector{Rational(1, 3), 0, Rational(1, 3), 0});
}

TEST_CASE("tilde entries live in [1, t] on the support; reconstruction is exact") {
    const ConstraintSystem sys(3, kT2);
    const auto vertices = vertex_oracle(3, kT2).vertices;
    std::mt19937_64 eng(41);
    for (int k = 0; k < 40; ++k) {
        const Mechanism m = fixtures::random_member(eng, vertices);
        const TildeForm f = tilde_normalize(m);
        const auto gamma = support(m);
        for (std::size_t j : gamma)
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(f.tilde(i, j) >= 1);
                CHECK(f.tilde(i, j) <= kT2.t());
            }
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(f.tilde(i, j) * f.mins[j] == m.mat()(i, j));
        // the loose set is invariant under the normalization
        CHECK(matrix_loose(f.tilde, kT2.t()) == loose_entries(m, kT2));
    }
}

TEST_CASE("column tight span: zero columns pin everything, support columns do not") {
    const ConstraintSystem sys4(4, kT2);
    const Mechanism m(fixtures::two_column_4x4(Rational(2)));
    CHECK(column_tight_span_dim(m, sys4, 1) == 4);
    CHECK(column_tight_span_dim(m, sys4, 3) == 4);
    CHECK(column_tight_span_dim(m, sys4, 0) <= 3);
    CHECK(column_tight_span_dim(m, sys4, 2) <= 3);

    const ConstraintSystem sys3(3, kT2);
    const Mechanism u(fixtures::uniform(3));
    for (std::size_t j = 0; j < 3; ++j) CHECK(column_tight_span_dim(u, sys3, j) == 0);
}

TEST_CASE("extremality of the named points") {
    for (std::size_t n = 1; n <= 4; ++n)
        for (const char* ts : {"1", "2"}) {
            const ConstraintSystem sys(n, PrivacyParameter(parse_rational(ts)));
            for (std::size_t i = 0; i < n; ++i)
                CHECK(is_extreme(Mechanism(fixtures::corner(n, i)), sys));
        }
    const ConstraintSystem sys5(5, kT2);
    CHECK(is_extreme(Mechanism(fixtures::loose_extreme_5x5()), sys5));
    for (std::size_t n = 2; n <= 4; ++n)
        CHECK_FALSE(is_extreme(Mechanism(fixtures::uniform(n)), ConstraintSystem(n, kT2)));
}

TEST_CASE("extremality certificate reports the tight rank") {
    const ConstraintSystem sys(3, kT2);
    const auto cert = extremality(Mechanism(fixtures::uniform(3)), sys);
    CHECK_FALSE(cert.is_extreme);
    CHECK(cert.tight.size() == 3);  // row sums only
    CHECK(cert.tight_rank == 3);
    const auto cert2 = extremality(Mechanism(fixtures::corner(3, 2)), sys);
    CHECK(cert2.is_extreme);
    CHECK(cert2.tight_rank == 9);
}

TEST_CASE("analyze: corner mechanism") {
    const ConstraintSystem sys(3, kT2);
    const AnalysisReport rep = analyze(Mechanism(fixtures::corner(3, 1)), sys);
    CHECK(rep.gamma == std::vector<std::size_t>{1});
    CHECK(rep.lambda.size() == 3);
    CHECK(rep.rank == 1);
    CHECK(rep.is_extreme);
    CHECK(rep.family == FamilyTag::DPrime);
}

TEST_CASE("analyze: two-column extreme point") {
    const ConstraintSystem sys(4, kT2);
    const AnalysisReport rep = analyze(Mechanism(fixtures::two_column_4x4(Rational(2))), sys);
    CHECK(rep.gamma == std::vector<std::size_t>{0, 2});
    CHECK(rep.lambda.empty());
    CHECK(rep.rank == 2);
    CHECK(rep.is_extreme);
    CHECK(rep.family == FamilyTag::DTilde);
}

TEST_CASE("analyze: the 5x5 loose-entry extreme point") {
    const ConstraintSystem sys(5, kT2);
    const AnalysisReport rep = analyze(Mechanism(fixtures::loose_extreme_5x5()), sys);
    CHECK(rep.gamma == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(rep.lambda == std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}});
    CHECK(rep.rank == 4);
    CHECK(rep.is_extreme);
    CHECK(rep.family == FamilyTag::OtherExtreme);
}

TEST_CASE("analyze: interior point is NotExtreme") {
    const ConstraintSystem sys(3, kT2);
    CHECK(analyze(Mechanism(fixtures::uniform(3)), sys).family == FamilyTag::NotExtreme);
}

TEST_CASE("analysis rejects non-members") {
    const ConstraintSystem sys(2, kT2);
    CHECK_THROWS_AS(analyze(Mechanism(Matrix::identity(2)), sys), std::domain_error);
}

TEST_CASE("tilde normalization refuses a mixed zero/nonzero column") {
    // stochastic, but in no polytope for any t: column 1 holds 0 and 1/2
    const Mechanism m(Matrix::parse("1/2 1/2; 0 1"));
    CHECK_THROWS_AS(tilde_normalize(m), std::domain_error);
}
