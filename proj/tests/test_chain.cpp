#include <doctest.h>

#include "oracles/test_support.hpp"
#include "spinctl/chain.hpp"
#include "spinctl/eigen_hermitian.hpp"
#include "spinctl/kernels.hpp"

using namespace spinctl;

TEST_CASE("spin operator basics") {
    SUBCASE("S_z on a single spin is diag(1/2, -1/2)") {
        const CMat m = spin_operator(1, Axis::Z, {1, 1.0}).mat();
        CHECK(m(0, 0) == cxd{0.5, 0.0});
        CHECK(m(1, 1) == cxd{-0.5, 0.0});
        CHECK(m(0, 1) == cxd{0.0, 0.0});
    }
    SUBCASE("S_x at slot 1 of two spins: (sigma_x/2) (x) I") {
        const CMat m = spin_operator(1, Axis::X, {2, 1.0}).mat();
        // basis index 2*s1 + s2
        const std::vector<std::pair<int, int>> nz = {{0, 2}, {2, 0}, {1, 3}, {3, 1}};
        for (auto [i, j] : nz) CHECK(m(i, j) == cxd{0.5, 0.0});
        double offsum = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (std::find(nz.begin(), nz.end(), std::make_pair(i, j)) == nz.end())
                    offsum += std::abs(m(i, j));
        CHECK(offsum == 0.0);
    }
    SUBCASE("su(2): [S_x, S_y] = i S_z at every site") {
        const ChainSpec spec{3, 1.0};
        for (int site = 1; site <= 3; ++site) {
            const CMat sx = spin_operator(site, Axis::X, spec).mat();
            const CMat sy = spin_operator(site, Axis::Y, spec).mat();
            const CMat sz = spin_operator(site, Axis::Z, spec).mat();
            CMat comm(8), ba(8);
            kernels::cmatmul(comm.data(), sx.data(), sy.data(), 8);
            kernels::cmatmul(ba.data(), sy.data(), sx.data(), 8);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    CHECK(std::abs(comm(i, j) - ba(i, j) - cxd{0, 1} * sz(i, j)) < 1e-14);
        }
    }
    SUBCASE("hermitian and traceless") {
        for (int site = 1; site <= 3; ++site) {
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                const CMat m = spin_operator(site, ax, {3, 1.0}).mat();
                CHECK(hermiticity_error(m) == 0.0);
                cxd tr{0, 0};
                for (int i = 0; i < 8; ++i) tr += m(i, i);
                CHECK(std::abs(tr) == 0.0);
            }
        }
    }
    SUBCASE("site out of range") {
        CHECK_THROWS_AS(spin_operator(0, Axis::X, {2, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(spin_operator(3, Axis::X, {2, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("heisenberg hamiltonian") {
    SUBCASE("single spin: empty sum") {
        const CMat h = heisenberg_hamiltonian({1, 1.0}).mat();
        CHECK(max_abs(h) == 0.0);
    }
    SUBCASE("two spins: singlet-triplet eigenvalues") {
        const EigenSystem sys = eigendecompose(heisenberg_hamiltonian({2, 1.0}));
        CHECK(sys.eigenvalues[0] == doctest::Approx(-0.75).epsilon(1e-13));
        for (int i = 1; i < 4; ++i)
            CHECK(sys.eigenvalues[i] == doctest::Approx(0.25).epsilon(1e-13));
    }
    SUBCASE("traceless and real for all supported sizes") {
        for (int n = 1; n <= 4; ++n) {
            const CMat h = heisenberg_hamiltonian({n, 1.0}).mat();
            cxd tr{0, 0};
            double max_imag = 0.0;
            for (int i = 0; i < h.dim(); ++i) tr += h(i, i);
            for (std::size_t k = 0; k < h.size(); ++k)
                max_imag = std::max(max_imag, std::abs(h.data()[k].imag()));
            CHECK(std::abs(tr) < 1e-14);
            CHECK(max_imag == 0.0);
        }
    }
    SUBCASE("commutes with total S_z") {
        for (int n : {2, 3}) {
            const ChainSpec spec{n, 1.0};
            const CMat h = heisenberg_hamiltonian(spec).mat();
            CMat total_sz(spec.dim());
            for (int site = 1; site <= n; ++site) {
                const CMat sz = spin_operator(site, Axis::Z, spec).mat();
                kernels::caxpy(total_sz.data(), 1.0, sz.data(), static_cast<int>(sz.size()));
            }
            CHECK(commutator_norm(h, total_sz) < 1e-12);
        }
    }
    SUBCASE("coupling scales linearly") {
        const CMat h1 = heisenberg_hamiltonian({3, 1.0}).mat();
        const CMat h2 = heisenberg_hamiltonian({3, 2.5}).mat();
        for (std::size_t k = 0; k < h1.size(); ++k)
            CHECK(std::abs(h2.data()[k] - 2.5 * h1.data()[k]) < 1e-14);
    }
    SUBCASE("invalid specs") {
        CHECK_THROWS_AS(heisenberg_hamiltonian({0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(heisenberg_hamiltonian({2, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(heisenberg_hamiltonian({2, -1.0}), std::invalid_argument);
    }
}

TEST_CASE("control hamiltonian") {
    SUBCASE("zero amplitude gives the zero matrix") {
        CHECK(max_abs(control_hamiltonian(ControlAxis::X, 0.0, {2, 1.0}).mat()) == 0.0);
    }
    SUBCASE("x with amplitude 2 on one spin is sigma_x") {
        const CMat m = control_hamiltonian(ControlAxis::X, 2.0, {1, 1.0}).mat();
        CHECK(m(0, 1) == cxd{1.0, 0.0});
        CHECK(m(1, 0) == cxd{1.0, 0.0});
        CHECK(m(0, 0) == cxd{0.0, 0.0});
    }
    SUBCASE("hermitian for both axes, negative amplitudes included") {
        for (double amp : {-3.7, 1.2}) {
            CHECK(hermiticity_error(control_hamiltonian(ControlAxis::X, amp, {3, 1.0}).mat()) == 0.0);
            CHECK(hermiticity_error(control_hamiltonian(ControlAxis::Y, amp, {3, 1.0}).mat()) == 0.0);
        }
    }
}

TEST_CASE("gate targets") {
    SUBCASE("X_end on one spin is sigma_x") {
        const CMat g = gate_target(GateTarget::x_end(1)).mat();
        CHECK(g(0, 1) == cxd{1.0, 0.0});
        CHECK(g(1, 0) == cxd{1.0, 0.0});
    }
    SUBCASE("CNOT_end on two spins: |10> <-> |11>, |00>,|01> fixed") {
        const CMat g = gate_target(GateTarget::cnot_end(2)).mat();
        CHECK(g(0, 0) == cxd{1.0, 0.0});
        CHECK(g(1, 1) == cxd{1.0, 0.0});
        CHECK(g(2, 3) == cxd{1.0, 0.0});
        CHECK(g(3, 2) == cxd{1.0, 0.0});
        CHECK(g(2, 2) == cxd{0.0, 0.0});
    }
    SUBCASE("X_end on three spins pairs indices differing in the last bit") {
        const CMat g = gate_target(GateTarget::x_end(3)).mat();
        for (int b = 0; b < 8; ++b)
            for (int c = 0; c < 8; ++c)
                CHECK(g(b, c) == (c == (b ^ 1) ? cxd{1.0, 0.0} : cxd{0.0, 0.0}));
    }
    SUBCASE("X_end and CNOT_end square to the identity") {
        for (const GateTarget& t : {GateTarget::x_end(3), GateTarget::cnot_end(3)}) {
            const CMat g = gate_target(t).mat();
            CMat sq(g.dim());
            kernels::cmatmul(sq.data(), g.data(), g.data(), g.dim());
            CHECK(max_abs_diff(sq, CMat::identity(g.dim())) < 1e-12);
        }
    }
    SUBCASE("sqrt(SWAP) squared is SWAP on the last two spins") {
        const CMat g = gate_target(GateTarget::sqrt_swap_end(3)).mat();
        CMat sq(8);
        kernels::cmatmul(sq.data(), g.data(), g.data(), 8);
        // SWAP on the last two of three: basis s1 s2 s3 -> s1 s3 s2
        CMat swap(8);
        for (int b = 0; b < 8; ++b) {
            const int s1 = (b >> 2) & 1, s2 = (b >> 1) & 1, s3 = b & 1;
            swap((s1 << 2) | (s3 << 1) | s2, b) = 1.0;
        }
        CHECK(max_abs_diff(sq, swap) < 1e-12);
    }
    SUBCASE("two-qubit gates need at least two spins") {
        CHECK_THROWS_AS(gate_target(GateTarget::cnot_end(1)), std::invalid_argument);
        CHECK_THROWS_AS(gate_target(GateTarget::sqrt_swap_end(1)), std::invalid_argument);
    }
    SUBCASE("custom targets must be unitary and well-sized") {
        CHECK_THROWS_AS(gate_target(GateTarget::custom_gate(2, CMat::identity(3))),
                        std::invalid_argument);
        CMat not_unitary = CMat::identity(4);
        not_unitary(0, 0) = 2.0;
        CHECK_THROWS_AS(gate_target(GateTarget::custom_gate(2, not_unitary)),
                        std::invalid_argument);
        CHECK(gate_target(GateTarget::custom_gate(2, CMat::identity(4))).dim() == 4);
    }
}
