#include <doctest.h>

#include <numbers>

#include "oracles/test_support.hpp"
#include "spinctl/controllability.hpp"
#include "spinctl/kernels.hpp"

using namespace spinctl;

namespace {

CMat skew(const CMat& h) {
    CMat m(h.dim());
    kernels::caxpy(m.data(), cxd{0.0, -1.0}, h.data(), static_cast<int>(m.size()));
    return m;
}

std::vector<CMat> xy_generators(int n_spins) {
    const ChainSpec spec{n_spins, 1.0};
    return {skew(heisenberg_hamiltonian(spec).mat()),
            skew(spin_operator(1, Axis::X, spec).mat()),
            skew(spin_operator(1, Axis::Y, spec).mat())};
}

std::vector<CMat> x_generators(int n_spins) {
    const ChainSpec spec{n_spins, 1.0};
    return {skew(heisenberg_hamiltonian(spec).mat()),
            skew(spin_operator(1, Axis::X, spec).mat())};
}

} // namespace

TEST_CASE("single-spin pauli pair closes to su(2)") {
    const ChainSpec spec{1, 1.0};
    const std::vector<CMat> gens = {skew(spin_operator(1, Axis::X, spec).mat()),
                                    skew(spin_operator(1, Axis::Y, spec).mat())};
    const LieBasis basis = lie_closure(gens, 4);
    CHECK(basis.dimension() == 3);
    for (const CMat& e : basis.elements) {
        CHECK(std::abs(frobenius_norm(e) - 1.0) < 1e-12);
    }
    // pairwise orthogonality under Re tr(A^dag B)
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(std::abs(trace_adjoint_product(basis.elements[i], basis.elements[j]).real()) <
                  1e-10);
}

TEST_CASE("two-spin chain: xy control closes to su(4), x-only stays proper") {
    const LieBasis xy = lie_closure(xy_generators(2), 16);
    CHECK(xy.dimension() == 15);
    const LieBasis x = lie_closure(x_generators(2), 16);
    CHECK(x.dimension() < 15);
}

TEST_CASE("closure is idempotent") {
    const LieBasis basis = lie_closure(x_generators(2), 16);
    const LieBasis again = lie_closure(basis.elements, 16);
    CHECK(again.dimension() == basis.dimension());
}

TEST_CASE("closure dimension is invariant under generator recombination") {
    const std::vector<CMat> gens = xy_generators(2);
    const int expected = lie_closure(gens, 16).dimension();
    // invertible real recombination
    const double mix[3][3] = {{1.0, 0.5, -0.25}, {0.0, 2.0, 1.0}, {0.5, 0.0, 1.5}};
    std::vector<CMat> combo;
    for (int i = 0; i < 3; ++i) {
        CMat m(gens[0].dim());
        for (int j = 0; j < 3; ++j)
            kernels::caxpy(m.data(), mix[i][j], gens[j].data(), static_cast<int>(m.size()));
        combo.push_back(std::move(m));
    }
    CHECK(lie_closure(combo, 16).dimension() == expected);
}

TEST_CASE("membership: generators, X_3 reachability, and a non-member") {
    const LieBasis lx = lie_closure(x_generators(3), 64);

    SUBCASE("generators belong to their own closure") {
        for (const CMat& g : x_generators(3)) {
            const auto res = algebra_membership(g, lx);
            CHECK(res.member);
            CHECK(res.residual_norm < 1e-12);
        }
    }
    SUBCASE("-i (pi/2) X_3 is in the x-only algebra") {
        CMat a = skew(gate_target(GateTarget::x_end(3)).mat());
        for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] *= std::numbers::pi / 2;
        const auto res = algebra_membership(a, lx);
        CHECK(res.member);
    }
    SUBCASE("-i S_1y is not in the x-only algebra") {
        const auto res =
            algebra_membership(skew(spin_operator(1, Axis::Y, {3, 1.0}).mat()), lx);
        CHECK(!res.member);
        CHECK(res.residual_norm > 1e-3);
    }
}

TEST_CASE("full controllability verdicts") {
    SUBCASE("N=2 xy is fully controllable with dimension 15") {
        const auto v = full_controllability_check({2, 1.0}, ControlSet::XY);
        CHECK(v.fully_controllable);
        CHECK(v.algebra_dimension == 15);
    }
    SUBCASE("N=3 xy is fully controllable with dimension 63") {
        const auto v = full_controllability_check({3, 1.0}, ControlSet::XY);
        CHECK(v.fully_controllable);
        CHECK(v.algebra_dimension == 63);
    }
    SUBCASE("single spin with x only is a one-dimensional abelian algebra") {
        const auto v = full_controllability_check({1, 1.0}, ControlSet::XOnly);
        CHECK(v.algebra_dimension == 1);
        CHECK(!v.fully_controllable);
    }
    SUBCASE("x-only subalgebra dimension never exceeds su(d)") {
        for (int n : {2, 3}) {
            const auto v = full_controllability_check({n, 1.0}, ControlSet::XOnly);
            CHECK(v.algebra_dimension <= v.hilbert_dim * v.hilbert_dim - 1);
        }
    }
}

TEST_CASE("traceless generators keep the closure inside su(d)") {
    const LieBasis basis = lie_closure(xy_generators(3), 64);
    CHECK(basis.dimension() <= 63);
}

TEST_CASE("non-skew generators are rejected") {
    CMat h = spin_operator(1, Axis::X, {2, 1.0}).mat();  // Hermitian, not skew
    CHECK_THROWS_AS(lie_closure({h}, 16), std::invalid_argument);
}

TEST_CASE("closure basis elements are skew-Hermitian and orthonormal") {
    const LieBasis basis = lie_closure(xy_generators(2), 16);
    for (int i = 0; i < basis.dimension(); ++i) {
        const CMat& a = basis.elements[i];
        CMat sum(a.dim());  // a + a^dag
        for (int r = 0; r < a.dim(); ++r)
            for (int c = 0; c < a.dim(); ++c) sum(r, c) = a(r, c) + std::conj(a(c, r));
        CHECK(max_abs(sum) < 1e-12);
        for (int j = 0; j < i; ++j)
            CHECK(std::abs(trace_adjoint_product(a, basis.elements[j]).real()) < 1e-10);
        CHECK(std::abs(frobenius_norm(a) - 1.0) < 1e-12);
    }
}
