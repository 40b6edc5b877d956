#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qwcount/walk_space.hpp"

#include <cmath>

using namespace qwcount;

namespace {

BipartiteInstance k43() { return BipartiteInstance(4, 3, {1, 3}, {1}); }

ComplexMatrix squared(const ComplexMatrix& m) { return mat_mul(m, m); }

}  // namespace

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(BipartiteInstance(0, 3, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(BipartiteInstance(3, 3, {3}, {}), std::invalid_argument);
    CHECK_THROWS_AS(BipartiteInstance(3, 3, {1, 1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(BipartiteInstance::from_counts(3, 3, 4, 0), std::invalid_argument);
    const BipartiteInstance inst(4, 3, {3, 1}, {1});
    CHECK(inst.marked(0) == std::vector<std::size_t>{1, 3});
    CHECK(inst.edge_count() == 12);
    CHECK(inst.arc_count() == 24);
    CHECK(inst.total_marked() == 3);
    CHECK(inst.restricted_to_part(1).marked_count(0) == 0);
    CHECK(inst.restricted_to_part(1).marked_count(1) == 1);
}

TEST_CASE("arc indexing round-trips and names the right tail") {
    const auto inst = k43();
    for (std::size_t a = 0; a < inst.arc_count(); ++a) CHECK(arc_to_flat(inst, flat_to_arc(inst, a)) == a);
    const ArcIndex arc{1, 2, 1};
    CHECK(arc_to_flat(inst, arc) == 12 + 2 * 3 + 1);
    CHECK(arc_tail(arc) == std::pair<int, std::size_t>{1, 1});
    CHECK(arc_tail(ArcIndex{0, 2, 1}) == std::pair<int, std::size_t>{0, 2});
}

TEST_CASE("operators are unitary involutions") {
    for (const auto& inst : {k43(), BipartiteInstance(5, 7, {0, 2, 4}, {1, 5, 6}), BipartiteInstance(1, 1, {}, {0})}) {
        const auto s = build_shift(inst);
        const auto c = build_coin(inst);
        const auto r = build_oracle(inst);
        const auto id = ComplexMatrix::identity(inst.arc_count());
        CHECK(unitarity_defect(s) < 1e-12);
        CHECK(unitarity_defect(c) < 1e-12);
        CHECK(unitarity_defect(r) < 1e-12);
        CHECK(max_abs_diff(squared(s), id) < 1e-12);
        CHECK(max_abs_diff(squared(c), id) < 1e-12);
        CHECK(max_abs_diff(squared(r), id) < 1e-12);
        CHECK(unitarity_defect(build_evolution(inst, r)) < 1e-10);
    }
}

TEST_CASE("coin block entries") {
    const auto inst = k43();
    const auto c = build_coin(inst);
    // Arcs leaving u = 0 in part 0: flat 0, 1, 2, degree 3.
    CHECK(c(0, 0).real() == doctest::Approx(2.0 / 3.0 - 1.0));
    CHECK(c(0, 1).real() == doctest::Approx(2.0 / 3.0));
    CHECK(c(0, 3) == Complex(0.0));
    // Arcs leaving v = 0 in part 1: flat 12, 15, 18, 21, degree 4.
    CHECK(c(12, 15).real() == doctest::Approx(0.5));
    CHECK(c(12, 12).real() == doctest::Approx(-0.5));
}

TEST_CASE("oracle marks arcs by their tail") {
    const auto inst = k43();
    const auto r = build_oracle(inst);
    for (std::size_t a = 0; a < inst.arc_count(); ++a) {
        const auto [part, vertex] = arc_tail(flat_to_arc(inst, a));
        CHECK(r(a, a).real() == (inst.is_marked(part, vertex) ? -1.0 : 1.0));
    }
    const auto r0 = build_part_oracle(inst, 0);
    const auto r1 = build_part_oracle(inst, 1);
    CHECK(max_abs_diff(mat_mul(r0, r1), r) == 0.0);
    // Arc 0 -> 1 has marked head 1 in part 1 but unmarked tail: untouched.
    CHECK(r(arc_to_flat(inst, {0, 0, 1}), arc_to_flat(inst, {0, 0, 1})).real() == 1.0);
    CHECK_THROWS_AS(build_part_oracle(inst, 2), std::invalid_argument);
}

TEST_CASE("ancilla circuit restricts to the part oracle") {
    for (const auto& inst : {k43(), BipartiteInstance(2, 5, {0}, {0, 3, 4})}) {
        for (int j = 0; j < 2; ++j) {
            const auto doubled = build_ancilla_oracle(inst, j);
            CHECK(unitarity_defect(doubled) < 1e-12);
            CHECK(max_abs_diff(restrict_to_ancilla_plus(doubled), build_part_oracle(inst, j)) < 1e-12);
            CHECK(ancilla_minus_leakage(doubled) < 1e-12);
        }
    }
}

TEST_CASE("uniform state") {
    const auto inst = k43();
    const auto d = uniform_state(inst);
    CHECK(d.dim() == 24);
    CHECK(d.norm() == doctest::Approx(1.0));
    CHECK(d[5].real() == doctest::Approx(1.0 / std::sqrt(24.0)));
    // The unmarked walk fixes |d>.
    const auto u = build_evolution(inst, ComplexMatrix::identity(24));
    CHECK(max_abs_diff(mat_vec(u, d), d) < 1e-14);
    CHECK_THROWS_AS(build_evolution(inst, ComplexMatrix::identity(3)), std::invalid_argument);
}
