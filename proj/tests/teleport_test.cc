#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ghz/teleport.h"
#include "reference_formulas.h"
#include "test_support.h"

using namespace ghz;
using ghz::testing::reference_formulas;

namespace {

const double kPi = std::numbers::pi;

std::vector<BlochAngles> angle_grid() {
    std::vector<BlochAngles> out;
    for (int i = 0; i < 5; i++) {
        for (int j = 0; j < 5; j++) {
            out.emplace_back(kPi * i / 4, 2 * kPi * j / 5);
        }
    }
    return out;
}

DensityMatrix pure_channel(int n) { return DensityMatrix::pure(ghz_state(n)); }

}  // namespace

TEST(TeleportOutput, NoiselessChannelIsPerfect) {
    std::mt19937 rng(21);
    for (int n = 2; n <= 6; n++) {
        DensityMatrix channel = pure_channel(n);
        for (int i = 0; i < 5; i++) {
            BlochAngles a = ghz::testing::random_angles(rng);
            DensityMatrix out = teleport_output(channel, a);
            EXPECT_LT(max_abs_diff(out.matrix(), bloch_input(a).projector()), 1e-10) << n;
            EXPECT_NEAR(fidelity(out, a), 1, 1e-10);
        }
    }
}

TEST(TeleportOutput, DephasedChannelLosesCoherence) {
    auto c = ClosedFormCase::make(4, NoiseFamily::pauli_z, 1.0);
    BlochAngles a(kPi / 2, 0);
    DensityMatrix out = teleport_output(evolve_closed_form(c, 20.0), a);
    EXPECT_LT(std::abs(out(0, 1)), 1e-12);
    EXPECT_NEAR(fidelity(out, a), 0.5, 1e-12);
}

TEST(TeleportOutput, XNoiseLeavesXEigenstateIntact) {
    auto c = ClosedFormCase::make(4, NoiseFamily::pauli_x, 1.0);
    BlochAngles a(kPi / 2, 0);
    EXPECT_NEAR(fidelity(teleport_output(evolve_closed_form(c, 0.25), a), a), 1, 1e-10);
}

TEST(TeleportOutput, MapAgreesWithFullCircuit) {
    std::mt19937 rng(22);
    for (int n = 2; n <= 5; n++) {
        DensityMatrix channel = ghz::testing::random_density(n, rng);
        TeleportMap map(channel);
        for (int i = 0; i < 4; i++) {
            BlochAngles a = ghz::testing::random_angles(rng);
            ComplexMatrix direct = teleport_output(channel, a).matrix();
            EXPECT_LT(max_abs_diff(map.output(bloch_input(a).projector()), direct), 1e-12);
            EXPECT_NEAR(map.fidelity(a), fidelity(teleport_output(channel, a), a), 1e-12);
        }
    }
}

TEST(Fidelity, PureAndMixedOutputs) {
    BlochAngles a(1.1, 2.3);
    EXPECT_NEAR(fidelity(DensityMatrix::pure(bloch_input(a)), a), 1, 1e-12);
    EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(1), a), 0.5, 1e-12);
    EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(2), a), std::invalid_argument);
}

TEST(Fidelity, FourGhzYNoiseAgainstReferenceFormula) {
    auto c = ClosedFormCase::make(4, NoiseFamily::pauli_y, 1.0);
    double th = kPi / 3, ph = kPi / 4;
    double s2 = std::sin(th) * std::sin(th);
    double expected = 0.5 * (1 + (s2 * 0.5 + 0.25) * std::exp(-0.8) + s2 * 0.5 * std::exp(-1.6));
    BlochAngles a(th, ph);
    EXPECT_NEAR(fidelity(teleport_output(evolve_closed_form(c, 0.2), a), a), expected, 1e-10);
    EXPECT_NEAR(fidelity_closed(c, 0.2, a), expected, 1e-12);
}

TEST(Quadrature, GaussLegendreBasics) {
    for (int n : {1, 2, 5, 16, 64}) {
        GaussLegendre gl = gauss_legendre(n);
        double sum = 0;
        for (double w : gl.weights) {
            sum += w;
        }
        EXPECT_NEAR(sum, 2, 1e-13) << n;
    }
    // An n-point rule integrates x^(2n-2) exactly.
    GaussLegendre gl = gauss_legendre(4);
    double m6 = 0;
    for (size_t i = 0; i < gl.nodes.size(); i++) {
        m6 += gl.weights[i] * std::pow(gl.nodes[i], 6);
    }
    EXPECT_NEAR(m6, 2.0 / 7, 1e-14);
}

TEST(Quadrature, SphereMoments) {
    EXPECT_NEAR(sphere_average([](double th, double) { return std::cos(th) * std::cos(th); }).value, 1.0 / 3,
                1e-12);
    auto nx2 = [](double th, double ph) {
        double v = std::sin(th) * std::cos(ph);
        return v * v;
    };
    EXPECT_NEAR(sphere_average(nx2).value, 1.0 / 3, 1e-12);
    EXPECT_NEAR(sphere_average([](double, double) { return 1.0; }).value, 1, 1e-14);
}

TEST(Quadrature, GivesUpOnRoughIntegrands) {
    auto rough = [](double th, double) { return std::cos(1000 * th); };
    EXPECT_THROW(sphere_average(rough, 1e-14, 32), QuadratureError);
}

TEST(AverageFidelity, FourGhzIsotropicValue) {
    auto c = ClosedFormCase::make(4, NoiseFamily::isotropic, 1.0);
    double expected = (3 + std::exp(-0.8) + 2 * std::exp(-1.6)) / 6;
    EXPECT_NEAR(average_fidelity_closed(c, 0.1), expected, 1e-12);
    EXPECT_NEAR(average_fidelity(evolve_closed_form(c, 0.1)).value, expected, 1e-10);
}

TEST(AverageFidelity, FourGhzPauliZHalf) {
    auto c = ClosedFormCase::make(4, NoiseFamily::pauli_z, 1.0);
    EXPECT_NEAR(average_fidelity_closed(c, 0.5), 2.0 / 3 + std::exp(-4.0) / 3, 1e-12);
}

TEST(AverageFidelity, NoiselessAndFullyDecohered) {
    EXPECT_NEAR(average_fidelity(pure_channel(3)).value, 1, 1e-12);
    for (const auto &c : ClosedFormCase::all(1.0)) {
        EXPECT_NEAR(average_fidelity_closed(c, 0), 1, 1e-14) << c.name();
        double limit = average_fidelity_closed(c, 40);
        EXPECT_GE(limit, 0.5 - 1e-12) << c.name();
    }
}

TEST(FormulaRegistry, MatchesReferencePointwiseFormulas) {
    for (const auto &p : reference_formulas()) {
        auto c = ClosedFormCase::make(p.n, p.family, 1.0);
        AverageFidelityFormula f(c);
        for (double kt : {0.05, 0.1, 0.3, 0.5, 1.0}) {
            for (const auto &a : angle_grid()) {
                EXPECT_NEAR(f.fidelity(kt, a), p.fidelity(kt, a.theta(), a.phi()), 1e-12) << c.name();
            }
            EXPECT_NEAR(f.evaluate(kt), p.fbar(kt), 1e-12) << c.name() << " kt=" << kt;
            EXPECT_NEAR(f.average()(kt), p.fbar(kt), 1e-12) << c.name();
        }
    }
}

TEST(FormulaRegistry, PipelineMatchesReferenceFormulas) {
    // Closed-form channel through the full circuit and partial trace.
    for (const auto &p : reference_formulas()) {
        auto c = ClosedFormCase::make(p.n, p.family, 1.0);
        for (double kt : {0.1, 0.5}) {
            DensityMatrix channel = evolve_closed_form(c, kt);
            TeleportMap map(channel);
            for (const auto &a : angle_grid()) {
                EXPECT_NEAR(map.fidelity(a), p.fidelity(kt, a.theta(), a.phi()), 1e-9) << c.name();
            }
            EXPECT_NEAR(average_fidelity(channel).value, p.fbar(kt), 1e-9) << c.name();
        }
    }
}

TEST(FormulaRegistry, MutationChangesValues) {
    AverageFidelityFormula f(ClosedFormCase::make(4, NoiseFamily::pauli_x, 1.0));
    EXPECT_GT(std::abs(f.mutated().evaluate(0.3) - f.evaluate(0.3)), 1e-3);
}

TEST(AverageFidelity, XNoiseIsSizeIndependent) {
    for (double kt : {0.05, 0.2, 0.7}) {
        double ref = average_fidelity_closed(ClosedFormCase::make(3, NoiseFamily::pauli_x, 1.0), kt);
        for (int n = 4; n <= 6; n++) {
            EXPECT_NEAR(average_fidelity_closed(ClosedFormCase::make(n, NoiseFamily::pauli_x, 1.0), kt), ref, 1e-12);
        }
    }
}

TEST(AverageFidelity, MonotoneAndThreeBeatsFour) {
    for (auto fam : kAllFamilies) {
        auto c3 = ClosedFormCase::make(3, fam, 1.0);
        auto c4 = ClosedFormCase::make(4, fam, 1.0);
        double prev = 1.0;
        for (int i = 1; i <= 100; i++) {
            double kt = i / 50.0;
            double v = average_fidelity_closed(c4, kt);
            EXPECT_LE(v, prev + 1e-15) << c4.name();
            prev = v;
            if (fam != NoiseFamily::mixed) {
                EXPECT_GE(average_fidelity_closed(c3, kt), v - 1e-14) << c3.name() << " kt=" << kt;
            }
        }
    }
}

TEST(TeleportMeasured, BellChannelOutcomesAreUniform) {
    BlochAngles a(0.7, 1.9);
    DensityMatrix channel = pure_channel(2);
    double total = 0;
    for (int m1 = 0; m1 < 2; m1++) {
        for (int m2 = 0; m2 < 2; m2++) {
            std::array<int, 2> outcome{m1, m2};
            MeasuredBranch b = teleport_measured(channel, a, outcome);
            EXPECT_NEAR(b.probability, 0.25, 1e-12);
            ASSERT_TRUE(b.state);
            EXPECT_NEAR(fidelity(*b.state, a), 1, 1e-10);
            total += b.probability;
        }
    }
    EXPECT_NEAR(total, 1, 1e-12);
}

TEST(TeleportMeasured, BranchesMixToUnconditionedOutput) {
    std::mt19937 rng(23);
    for (int n : {3, 4}) {
        DensityMatrix channel = ghz::testing::random_density(n, rng);
        BlochAngles a = ghz::testing::random_angles(rng);
        ComplexMatrix mix(2, 2);
        double total = 0;
        for (int idx = 0; idx < (1 << n); idx++) {
            std::vector<int> outcome;
            for (int q = n - 1; q >= 0; q--) {
                outcome.push_back((idx >> q) & 1);
            }
            MeasuredBranch b = teleport_measured(channel, a, outcome);
            total += b.probability;
            if (b.state) {
                ComplexMatrix part = b.state->matrix();
                part *= b.probability;
                mix += part;
            }
        }
        EXPECT_NEAR(total, 1, 1e-10);
        EXPECT_LT(max_abs_diff(mix, teleport_output(channel, a).matrix()), 1e-10);
    }
}

TEST(TeleportMeasured, ZeroProbabilityBranchHasNoState) {
    // A basis-state channel makes most outcomes impossible.
    DensityMatrix channel = DensityMatrix::pure(StateVector::basis(3, 0));
    int empty = 0;
    for (int idx = 0; idx < 8; idx++) {
        std::array<int, 3> outcome{(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
        MeasuredBranch b = teleport_measured(channel, BlochAngles(0, 0), outcome);
        if (!b.state) {
            EXPECT_LT(b.probability, 1e-14);
            empty++;
        }
    }
    EXPECT_GT(empty, 0);
    std::array<int, 2> wrong{0, 1};
    EXPECT_THROW(teleport_measured(channel, BlochAngles(0, 0), wrong), std::invalid_argument);
}

TEST(Scenario, NumericPipelineMatchesClosedForm) {
    auto c = ClosedFormCase::make(3, NoiseFamily::mixed, 2.0);
    TeleportScenario s{3, c, {0.0, 0.1, 0.4}};
    FidelityCurve numeric = fidelity_curve(s);
    FidelityCurve closed = closed_form_curve(s);
    ASSERT_EQ(numeric.points.size(), 3u);
    EXPECT_EQ(numeric.source, CurveSource::numeric_pipeline);
    EXPECT_EQ(closed.source, CurveSource::closed_form);
    for (size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(numeric.points[i].fbar, closed.points[i].fbar, 1e-7);
    }
}

TEST(Scenario, ExplicitNoiseSpecMatchesFamily) {
    // 3GHZ with X noise on channel qubits 1..3 is the pauli-x family.
    NoiseSpec spec({{1, PauliAxis::x, 0.5}, {2, PauliAxis::x, 0.5}, {3, PauliAxis::x, 0.5}});
    TeleportScenario s{3, spec, {0.3}};
    EXPECT_NEAR(average_fidelity_numeric(s, 0.3), 2.0 / 3 + std::exp(-1.2) / 3, 1e-8);
    EXPECT_THROW(closed_form_curve(s), std::invalid_argument);
}

TEST(Scenario, ValidatesGrid) {
    auto c = ClosedFormCase::make(3, NoiseFamily::pauli_x, 1.0);
    EXPECT_THROW((TeleportScenario{3, c, {0.2, 0.1}}.validate()), std::invalid_argument);
    EXPECT_THROW((TeleportScenario{3, c, {-0.1}}.validate()), std::invalid_argument);
    EXPECT_THROW((TeleportScenario{4, c, {0.1}}.validate()), std::invalid_argument);
}
