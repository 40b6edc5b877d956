#pragma once

// Arc-space operators of the coined quantum walk on the complete bipartite graph K_{n0,n1}.
//
// Basis state |i>|uv> (u in V0, v in V1) is the arc leaving V_i: for i = 0 the arc runs
// u -> v, for i = 1 it runs v -> u. Flat layout: i*n0*n1 + u*n1 + v.

#include "qwcount/linalg.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace qwcount {

class BipartiteInstance {
public:
    /// Throws std::invalid_argument when a part is empty or a marked index is out of
    /// range or repeated. Marked sets are stored sorted.
    BipartiteInstance(std::size_t n0, std::size_t n1, std::vector<std::size_t> marked0,
                      std::vector<std::size_t> marked1);

    /// Canonical marking {0, ..., k-1} in each part.
    static BipartiteInstance from_counts(std::size_t n0, std::size_t n1, std::size_t k0, std::size_t k1);

    std::size_t n0() const noexcept { return sizes_[0]; }
    std::size_t n1() const noexcept { return sizes_[1]; }
    std::size_t part_size(int part) const;
    std::size_t marked_count(int part) const;
    const std::vector<std::size_t>& marked(int part) const;
    bool is_marked(int part, std::size_t vertex) const;

    std::size_t vertex_count() const noexcept { return sizes_[0] + sizes_[1]; }
    std::size_t total_marked() const noexcept { return marked_[0].size() + marked_[1].size(); }
    std::size_t edge_count() const noexcept { return sizes_[0] * sizes_[1]; }
    std::size_t arc_count() const noexcept { return 2 * edge_count(); }

    /// Same graph with the marks of the other part removed.
    BipartiteInstance restricted_to_part(int part) const;

    friend bool operator==(const BipartiteInstance&, const BipartiteInstance&) = default;

private:
    std::array<std::size_t, 2> sizes_{};
    std::array<std::vector<std::size_t>, 2> marked_;
    std::array<std::vector<bool>, 2> is_marked_;
};

/// Throws std::invalid_argument unless part is 0 or 1.
void check_part(int part);

struct ArcIndex {
    int direction = 0;
    std::size_t u = 0;
    std::size_t v = 0;

    friend bool operator==(const ArcIndex&, const ArcIndex&) = default;
};

std::size_t arc_to_flat(const BipartiteInstance& inst, const ArcIndex& arc);
ArcIndex flat_to_arc(const BipartiteInstance& inst, std::size_t flat);

/// Tail vertex of an arc: (part, index within part).
std::pair<int, std::size_t> arc_tail(const ArcIndex& arc);

/// Flip-flop shift S = X (x) I.
ComplexMatrix build_shift(const BipartiteInstance& inst);
/// Grover coin: direct sum over tail vertices of 2|d_u><d_u| - I.
ComplexMatrix build_coin(const BipartiteInstance& inst);
/// -1 on every arc whose tail is marked, +1 elsewhere.
ComplexMatrix build_oracle(const BipartiteInstance& inst);
/// The oracle on arcs with direction bit `part`, identity on the rest.
ComplexMatrix build_part_oracle(const BipartiteInstance& inst, int part);

/// C(Z)_j * Rcal * C(Z)_j on arc space (x) ancilla qubit (ancilla is the fast index).
/// Rcal flips the ancilla on marked-tail arcs; C(Z)_j applies Z to the ancilla when the
/// direction bit equals j.
ComplexMatrix build_ancilla_oracle(const BipartiteInstance& inst, int part);

/// <a,+| M |b,+> for an operator on arc space (x) ancilla.
ComplexMatrix restrict_to_ancilla_plus(const ComplexMatrix& doubled);
/// Largest norm of the ancilla-|-> component of M|b,+> over arc basis states b.
double ancilla_minus_leakage(const ComplexMatrix& doubled);

/// U = S * C * oracle.
ComplexMatrix build_evolution(const BipartiteInstance& inst, const ComplexMatrix& oracle);

/// Uniform superposition over all 2*n0*n1 arcs.
ComplexVector uniform_state(const BipartiteInstance& inst);

}  // namespace qwcount
