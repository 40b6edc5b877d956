#include "qwcount/reduced_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwcount {

double wrap_phase(double x) {
    constexpr double two_pi = 2.0 * kPi;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

WalkAngles WalkAngles::from_thetas(double theta0, double theta1) {
    return {theta0, theta1, 0.5 * (theta0 + theta1), 0.5 * (theta0 - theta1)};
}

double part_angle(std::size_t n, std::size_t k) {
    if (n == 0 || k > n) throw std::invalid_argument("part_angle: need 0 <= k <= n, n >= 1");
    // arccos loses accuracy near +-1; atan2 of the exact sine/cosine pair does not.
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double c = (nd - 2.0 * kd) / nd;
    const double s = 2.0 * std::sqrt(kd * (nd - kd)) / nd;
    return std::atan2(s, c);
}

WalkAngles angles_from_instance(const BipartiteInstance& inst) {
    return WalkAngles::from_thetas(part_angle(inst.n0(), inst.marked_count(0)),
                                   part_angle(inst.n1(), inst.marked_count(1)));
}

std::string_view label_name(BasisLabel label) {
    switch (label) {
        case BasisLabel::K0_K1: return "K0,K1";
        case BasisLabel::K0_K1bar: return "K0,K1bar";
        case BasisLabel::K0bar_K1: return "K0bar,K1";
        case BasisLabel::K0bar_K1bar: return "K0bar,K1bar";
        case BasisLabel::K1_K0: return "K1,K0";
        case BasisLabel::K1_K0bar: return "K1,K0bar";
        case BasisLabel::K1bar_K0: return "K1bar,K0";
        case BasisLabel::K1bar_K0bar: return "K1bar,K0bar";
    }
    return "?";
}

namespace {

// Slot s: direction = s / 4; the tail set is marked iff bit 1 of (s % 4) is clear, the head
// set is marked iff bit 0 is clear.
struct SlotShape {
    int direction;
    bool tail_marked;
    bool head_marked;
};

SlotShape slot_shape(std::size_t slot) {
    const std::size_t r = slot % 4;
    return {static_cast<int>(slot / 4), (r & 2u) == 0, (r & 1u) == 0};
}

}  // namespace

InvariantBasis invariant_basis(const BipartiteInstance& inst) {
    InvariantBasis basis;
    const std::size_t dim = inst.arc_count();
    for (std::size_t slot = 0; slot < 8; ++slot) {
        const SlotShape shape = slot_shape(slot);
        const int tail_part = shape.direction;
        const int head_part = 1 - shape.direction;
        std::vector<std::size_t> arcs;
        for (std::size_t a = 0; a < dim; ++a) {
            const ArcIndex arc = flat_to_arc(inst, a);
            if (arc.direction != shape.direction) continue;
            const std::size_t tail = tail_part == 0 ? arc.u : arc.v;
            const std::size_t head = head_part == 0 ? arc.u : arc.v;
            if (inst.is_marked(tail_part, tail) == shape.tail_marked &&
                inst.is_marked(head_part, head) == shape.head_marked)
                arcs.push_back(a);
        }
        if (arcs.empty()) continue;
        ComplexVector v(dim);
        const double amp = 1.0 / std::sqrt(static_cast<double>(arcs.size()));
        for (auto a : arcs) v[a] = amp;
        basis.present[slot] = true;
        basis.slots.push_back(slot);
        basis.labels.push_back(kBasisOrder[slot]);
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

ComplexMatrix walk_block(double x) {
    const double c = std::cos(x);
    const double s = std::sin(x);
    return ComplexMatrix(4, 4, {
        c,  -s, 0.0, 0.0,
        0.0, 0.0, -c, s,
        -s, -c, 0.0, 0.0,
        0.0, 0.0, s,  c,
    });
}

ComplexMatrix build_u_red(const WalkAngles& angles) {
    const ComplexMatrix upper = walk_block(angles.theta0);
    const ComplexMatrix lower = walk_block(angles.theta1);
    ComplexMatrix u(8, 8);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            u(i, 4 + j) = upper(i, j);
            u(4 + i, j) = lower(i, j);
        }
    }
    return u;
}

ReducedOperator reduce_operator(const ComplexMatrix& u_full, const InvariantBasis& basis) {
    if (!u_full.is_square()) throw std::invalid_argument("reduce_operator: operator is not square");
    const std::size_t n = basis.vectors.size();
    for (const auto& b : basis.vectors)
        if (b.dim() != u_full.rows()) throw std::invalid_argument("reduce_operator: basis dimension mismatch");

    ReducedOperator out{ComplexMatrix(n, n), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexVector image = mat_vec(u_full, basis.vectors[j]);
        ComplexVector residual = image;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex m = inner(basis.vectors[i], image);
            out.matrix(i, j) = m;
            for (std::size_t a = 0; a < residual.dim(); ++a) residual[a] -= m * basis.vectors[i][a];
        }
        out.leakage = std::max(out.leakage, residual.norm());
    }
    return out;
}

ComplexMatrix reconciled_u_red(const WalkAngles& angles, const InvariantBasis& basis) {
    const ComplexMatrix u_red = build_u_red(angles);
    const auto& rec = kBasisReconciliation;
    const std::size_t n = basis.slots.size();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t si = basis.slots[i];
            const std::size_t sj = basis.slots[j];
            out(i, j) = static_cast<double>(rec.sign[si] * rec.sign[sj]) *
                        u_red(static_cast<std::size_t>(rec.slot[si]), static_cast<std::size_t>(rec.slot[sj]));
        }
    }
    return out;
}

ComplexVector reduced_uniform_state(const WalkAngles& angles) {
    const double s0 = std::sin(0.5 * angles.theta0);
    const double c0 = std::cos(0.5 * angles.theta0);
    const double s1 = std::sin(0.5 * angles.theta1);
    const double c1 = std::cos(0.5 * angles.theta1);
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexVector(std::vector<Complex>{
        r * s0 * s1, r * s0 * c1, r * c0 * s1, r * c0 * c1,
        r * s1 * s0, r * s1 * c0, r * c1 * s0, r * c1 * c0,
    });
}

std::string_view label_name(EigenLabel label) {
    switch (label) {
        case EigenLabel::MuPlus: return "mu+";
        case EigenLabel::MuPlusConj: return "mu+*";
        case EigenLabel::SigmaPlus: return "sigma+";
        case EigenLabel::SigmaPlusConj: return "sigma+*";
        case EigenLabel::MuMinus: return "mu-";
        case EigenLabel::MuMinusConj: return "mu-*";
        case EigenLabel::SigmaMinus: return "sigma-";
        case EigenLabel::SigmaMinusConj: return "sigma-*";
    }
    return "?";
}

std::size_t table_slot(EigenLabel label) {
    switch (label) {
        case EigenLabel::MuPlus: return 0;
        case EigenLabel::MuPlusConj: return 1;
        case EigenLabel::MuMinusConj: return 2;  // -e^{-i mu} = e^{i(pi - mu)}
        case EigenLabel::MuMinus: return 3;
        case EigenLabel::SigmaPlus: return 4;
        case EigenLabel::SigmaPlusConj: return 5;
        case EigenLabel::SigmaMinusConj: return 6;
        case EigenLabel::SigmaMinus: return 7;
    }
    throw std::invalid_argument("table_slot: unknown label");
}

SpectralDecomposition spectral_decomposition(const WalkAngles& angles) {
    const Complex i{0.0, 1.0};
    const double mu = angles.mu;
    const double sigma = angles.sigma;
    const double norm = 1.0 / std::sqrt(8.0);
    const ComplexVector d_red = reduced_uniform_state(angles);

    auto make = [&](EigenLabel label, Complex eigenvalue, std::vector<Complex> entries) {
        for (auto& z : entries) z *= norm;
        Eigenpair pair{label, eigenvalue, wrap_phase(std::arg(eigenvalue)), ComplexVector(std::move(entries)), 0.0};
        pair.initial_overlap = std::norm(inner(pair.eigenvector, d_red));
        return pair;
    };

    const Complex es = std::polar(1.0, sigma);
    const Complex es_c = std::polar(1.0, -sigma);
    const Complex em = std::polar(1.0, mu);
    const Complex em_c = std::polar(1.0, -mu);

    SpectralDecomposition out{};
    std::size_t n = 0;
    for (double s : {1.0, -1.0}) {
        const bool plus = s > 0.0;
        out.pairs[n++] = make(plus ? EigenLabel::MuPlus : EigenLabel::MuMinus, s * em,
                              {s * es, -s * i * es, s * i * es, s * es, 1.0, -i, i, 1.0});
        out.pairs[n++] = make(plus ? EigenLabel::MuPlusConj : EigenLabel::MuMinusConj, s * em_c,
                              {s * es_c, s * i * es_c, -s * i * es_c, s * es_c, 1.0, i, -i, 1.0});
        out.pairs[n++] = make(plus ? EigenLabel::SigmaPlus : EigenLabel::SigmaMinus, s * es,
                              {s * em, s * i * em, s * i * em, -s * em, 1.0, -i, -i, -1.0});
        out.pairs[n++] = make(plus ? EigenLabel::SigmaPlusConj : EigenLabel::SigmaMinusConj, s * es_c,
                              {s * em_c, -s * i * em_c, -s * i * em_c, -s * em_c, 1.0, i, i, -1.0});
    }
    return out;
}

std::vector<PhaseWeight> eigenphase_table(const WalkAngles& angles) {
    const double mu = angles.mu;
    const double sigma = angles.sigma;
    const double cs = std::cos(0.5 * sigma);
    const double ss = std::sin(0.5 * sigma);
    const double cm = std::cos(0.5 * mu);
    const double sm = std::sin(0.5 * mu);
    return {
        {wrap_phase(mu), 0.25 * cs * cs},
        {wrap_phase(-mu), 0.25 * cs * cs},
        {wrap_phase(kPi - mu), 0.25 * ss * ss},
        {wrap_phase(-(kPi - mu)), 0.25 * ss * ss},
        {wrap_phase(sigma), 0.25 * cm * cm},
        {wrap_phase(-sigma), 0.25 * cm * cm},
        {wrap_phase(kPi - sigma), 0.25 * sm * sm},
        {wrap_phase(-(kPi - sigma)), 0.25 * sm * sm},
    };
}

}  // namespace qwcount
