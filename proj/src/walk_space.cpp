#include "qwcount/walk_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qwcount {

void check_part(int part) {
    if (part != 0 && part != 1)
        throw std::invalid_argument("part must be 0 or 1, got " + std::to_string(part));
}

BipartiteInstance::BipartiteInstance(std::size_t n0, std::size_t n1, std::vector<std::size_t> marked0,
                                     std::vector<std::size_t> marked1)
    : sizes_{n0, n1}, marked_{std::move(marked0), std::move(marked1)} {
    if (n0 == 0 || n1 == 0) throw std::invalid_argument("both parts need at least one vertex");
    for (int part = 0; part < 2; ++part) {
        auto& set = marked_[part];
        std::sort(set.begin(), set.end());
        if (std::adjacent_find(set.begin(), set.end()) != set.end())
            throw std::invalid_argument("duplicate marked vertex in part " + std::to_string(part));
        if (!set.empty() && set.back() >= sizes_[part])
            throw std::invalid_argument("marked vertex " + std::to_string(set.back()) +
                                        " out of range for part " + std::to_string(part) +
                                        " of size " + std::to_string(sizes_[part]));
        is_marked_[part].assign(sizes_[part], false);
        for (auto v : set) is_marked_[part][v] = true;
    }
}

BipartiteInstance BipartiteInstance::from_counts(std::size_t n0, std::size_t n1, std::size_t k0,
                                                 std::size_t k1) {
    if (k0 > n0 || k1 > n1) throw std::invalid_argument("marked count exceeds part size");
    std::vector<std::size_t> m0(k0), m1(k1);
    std::iota(m0.begin(), m0.end(), std::size_t{0});
    std::iota(m1.begin(), m1.end(), std::size_t{0});
    return BipartiteInstance(n0, n1, std::move(m0), std::move(m1));
}

std::size_t BipartiteInstance::part_size(int part) const {
    check_part(part);
    return sizes_[part];
}

std::size_t BipartiteInstance::marked_count(int part) const {
    check_part(part);
    return marked_[part].size();
}

const std::vector<std::size_t>& BipartiteInstance::marked(int part) const {
    check_part(part);
    return marked_[part];
}

bool BipartiteInstance::is_marked(int part, std::size_t vertex) const {
    check_part(part);
    return vertex < sizes_[part] && is_marked_[part][vertex];
}

BipartiteInstance BipartiteInstance::restricted_to_part(int part) const {
    check_part(part);
    return part == 0 ? BipartiteInstance(n0(), n1(), marked_[0], {})
                     : BipartiteInstance(n0(), n1(), {}, marked_[1]);
}

std::size_t arc_to_flat(const BipartiteInstance& inst, const ArcIndex& arc) {
    if ((arc.direction != 0 && arc.direction != 1) || arc.u >= inst.n0() || arc.v >= inst.n1())
        throw std::invalid_argument("arc index out of range");
    return static_cast<std::size_t>(arc.direction) * inst.edge_count() + arc.u * inst.n1() + arc.v;
}

ArcIndex flat_to_arc(const BipartiteInstance& inst, std::size_t flat) {
    if (flat >= inst.arc_count()) throw std::invalid_argument("flat arc index out of range");
    const std::size_t edge = flat % inst.edge_count();
    return {static_cast<int>(flat / inst.edge_count()), edge / inst.n1(), edge % inst.n1()};
}

std::pair<int, std::size_t> arc_tail(const ArcIndex& arc) {
    return arc.direction == 0 ? std::pair{0, arc.u} : std::pair{1, arc.v};
}

ComplexMatrix build_shift(const BipartiteInstance& inst) {
    const std::size_t dim = inst.arc_count();
    const std::size_t half = inst.edge_count();
    ComplexMatrix s(dim, dim);
    for (std::size_t e = 0; e < half; ++e) {
        s(half + e, e) = 1.0;
        s(e, half + e) = 1.0;
    }
    return s;
}

ComplexMatrix build_coin(const BipartiteInstance& inst) {
    const std::size_t dim = inst.arc_count();
    ComplexMatrix c(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const ArcIndex arc_a = flat_to_arc(inst, a);
        const auto tail_a = arc_tail(arc_a);
        const double degree = static_cast<double>(arc_a.direction == 0 ? inst.n1() : inst.n0());
        for (std::size_t b = 0; b < dim; ++b) {
            const ArcIndex arc_b = flat_to_arc(inst, b);
            if (arc_b.direction != arc_a.direction || arc_tail(arc_b) != tail_a) continue;
            c(a, b) = 2.0 / degree - (a == b ? 1.0 : 0.0);
        }
    }
    return c;
}

namespace {

bool tail_marked(const BipartiteInstance& inst, const ArcIndex& arc) {
    const auto [part, vertex] = arc_tail(arc);
    return inst.is_marked(part, vertex);
}

}  // namespace

ComplexMatrix build_oracle(const BipartiteInstance& inst) {
    const std::size_t dim = inst.arc_count();
    ComplexMatrix r(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) r(a, a) = tail_marked(inst, flat_to_arc(inst, a)) ? -1.0 : 1.0;
    return r;
}

ComplexMatrix build_part_oracle(const BipartiteInstance& inst, int part) {
    check_part(part);
    const std::size_t dim = inst.arc_count();
    ComplexMatrix r(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const ArcIndex arc = flat_to_arc(inst, a);
        r(a, a) = arc.direction == part && tail_marked(inst, arc) ? -1.0 : 1.0;
    }
    return r;
}

ComplexMatrix build_ancilla_oracle(const BipartiteInstance& inst, int part) {
    check_part(part);
    const std::size_t dim = inst.arc_count();
    const ComplexMatrix x(2, 2, {0.0, 1.0, 1.0, 0.0});
    const ComplexMatrix z(2, 2, {1.0, 0.0, 0.0, -1.0});
    const ComplexMatrix id2 = ComplexMatrix::identity(2);

    // Both factors are block diagonal in the arc index: a 2x2 ancilla block per arc.
    ComplexMatrix flip(2 * dim, 2 * dim);
    ComplexMatrix controlled_z(2 * dim, 2 * dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const ArcIndex arc = flat_to_arc(inst, a);
        const ComplexMatrix& f = tail_marked(inst, arc) ? x : id2;
        const ComplexMatrix& g = arc.direction == part ? z : id2;
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                flip(2 * a + r, 2 * a + c) = f(r, c);
                controlled_z(2 * a + r, 2 * a + c) = g(r, c);
            }
        }
    }
    return mat_mul(controlled_z, mat_mul(flip, controlled_z));
}

ComplexMatrix restrict_to_ancilla_plus(const ComplexMatrix& doubled) {
    if (!doubled.is_square() || doubled.rows() % 2 != 0)
        throw std::invalid_argument("restrict_to_ancilla_plus: expected an operator on arc space (x) qubit");
    const std::size_t dim = doubled.rows() / 2;
    ComplexMatrix out(dim, dim);
    // |+> = (|0> + |1>)/sqrt2, so <a,+|M|b,+> averages the four ancilla entries.
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            out(a, b) = 0.5 * (doubled(2 * a, 2 * b) + doubled(2 * a, 2 * b + 1) + doubled(2 * a + 1, 2 * b) +
                               doubled(2 * a + 1, 2 * b + 1));
    return out;
}

double ancilla_minus_leakage(const ComplexMatrix& doubled) {
    if (!doubled.is_square() || doubled.rows() % 2 != 0)
        throw std::invalid_argument("ancilla_minus_leakage: expected an operator on arc space (x) qubit");
    const std::size_t dim = doubled.rows() / 2;
    double worst = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        double sum = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            const Complex minus = 0.5 * (doubled(2 * a, 2 * b) + doubled(2 * a, 2 * b + 1) -
                                         doubled(2 * a + 1, 2 * b) - doubled(2 * a + 1, 2 * b + 1));
            sum += std::norm(minus);
        }
        worst = std::max(worst, std::sqrt(sum));
    }
    return worst;
}

ComplexMatrix build_evolution(const BipartiteInstance& inst, const ComplexMatrix& oracle) {
    const std::size_t dim = inst.arc_count();
    if (oracle.rows() != dim || oracle.cols() != dim)
        throw std::invalid_argument("build_evolution: oracle does not act on the arc space");
    return mat_mul(build_shift(inst), mat_mul(build_coin(inst), oracle));
}

ComplexVector uniform_state(const BipartiteInstance& inst) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(inst.arc_count()));
    return ComplexVector(std::vector<Complex>(inst.arc_count(), Complex{amp, 0.0}));
}

}  // namespace qwcount
