#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "proxim/gallery.hpp"
#include "proxim/gauge.hpp"
#include "proxim/properties.hpp"
#include "proxim/sets.hpp"
#include "proxim/verify.hpp"

using namespace proxim;

namespace {

Point pt(std::vector<double> c, NormTag n = NormTag::euclidean()) {
    return make_point(std::move(c), n);
}

/// Touching perpendicular segments under the sup norm.
std::pair<SetDescriptor, SetDescriptor> corner_segments() {
    const NormTag sup = NormTag::sup();
    return {make_segment(pt({0, 0}, sup), pt({0, 1}, sup)),
            make_segment(pt({0, 0}, sup), pt({1, 0}, sup))};
}

}  // namespace

TEST(Gauge, Variants) {
    const auto lin = make_linear_gauge(0.25);
    EXPECT_DOUBLE_EQ(gauge_eval(lin, 2.0).psi, 1.5);
    EXPECT_DOUBLE_EQ(gauge_eval(lin, 2.0).i_minus_psi, 0.5);
    EXPECT_THROW(make_linear_gauge(1.0), ConfigError);
    EXPECT_THROW(make_linear_gauge(-0.1), ConfigError);

    const auto shift = make_affine_shift_gauge();
    EXPECT_DOUBLE_EQ(gauge_eval(shift, 3.5).psi, 4.5);
    EXPECT_DOUBLE_EQ(gauge_eval(shift, 3.5).i_minus_psi, -1.0);  // exact by construction

    const auto rat = make_rational_gauge();
    EXPECT_DOUBLE_EQ(gauge_eval(rat, 1.0).psi, 0.5);
    EXPECT_DOUBLE_EQ(gauge_eval(rat, 1.0).i_minus_psi, 0.5);
    EXPECT_DOUBLE_EQ(gauge_eval(rat, 0.0).psi, 0.0);

    const auto tab = make_tabulated_gauge({0.0, 1.0, 2.0}, {0.0, 0.5, 2.0});
    EXPECT_DOUBLE_EQ(gauge_eval(tab, 0.5).psi, 0.25);
    EXPECT_DOUBLE_EQ(gauge_eval(tab, 1.5).psi, 1.25);
    EXPECT_DOUBLE_EQ(gauge_eval(tab, 3.0).psi, 3.5);  // extended with the final slope
    EXPECT_THROW(make_tabulated_gauge({0.0}, {0.0}), ConfigError);
    EXPECT_THROW(make_tabulated_gauge({0.0, 1.0}, {0.5, 0.2}), ConfigError);
    EXPECT_THROW(make_tabulated_gauge({0.5, 1.0}, {0.0, 1.0}), ConfigError);
    EXPECT_THROW(gauge_eval(lin, -1.0), DomainError);
}

TEST(Falsifier, StronglyUcViolatedOnCornerSegments) {
    const auto [g, h] = corner_segments();
    FalsifyOptions opt;
    opt.delta = 1e-3;
    opt.epsilon = 0.4;
    opt.budget = 20000;
    const auto rep = falsify_strongly_uc(g, h, opt);
    ASSERT_EQ(rep.verdict, PropertyVerdict::ViolationCandidate);
    ASSERT_TRUE(rep.best_witness.has_value());
    const auto& w = *rep.best_witness;
    EXPECT_GE(w.separation, 0.45);
    EXPECT_LE(w.separation, 0.55);
    EXPECT_LE(w.defect, 1e-3);
    EXPECT_TRUE(contains(g, w.u, 1e-9));
    EXPECT_TRUE(contains(g, w.z, 1e-9));
    EXPECT_TRUE(contains(h, w.v, 1e-9));
    // Witness numbers reproduce from raw coordinates.
    const double anchor = point_set_distance(w.v, g).value;
    const double defect = std::max(distance(w.u, w.v) - anchor, distance(w.z, w.v) - anchor);
    EXPECT_NEAR(defect, w.defect, 1e-12);
    EXPECT_NEAR(distance(w.u, w.z), w.separation, 1e-12);
}

TEST(Falsifier, UcSilentOnCornerSegments) {
    const auto [g, h] = corner_segments();
    FalsifyOptions opt;
    opt.delta = 1e-3;
    opt.epsilon = 0.05;
    opt.budget = 20000;
    const auto rep = falsify_uc(g, h, opt);
    EXPECT_EQ(rep.verdict, PropertyVerdict::NoViolationFound);
    EXPECT_FALSE(rep.best_witness.has_value());
    EXPECT_EQ(rep.search_budget, 20000);
}

TEST(Falsifier, HintReplayShortCircuits) {
    const auto [g, h] = corner_segments();
    FalsifyOptions opt;
    opt.delta = 1e-3;
    opt.epsilon = 0.4;
    opt.budget = 20000;
    const auto first = falsify_strongly_uc(g, h, opt);
    ASSERT_TRUE(first.best_witness.has_value());

    FalsifyOptions replay = opt;
    replay.budget = 1;  // enough for the single validation evaluation
    replay.hint = first.best_witness;
    const auto second = falsify_strongly_uc(g, h, replay);
    ASSERT_EQ(second.verdict, PropertyVerdict::ViolationCandidate);
    EXPECT_EQ(second.best_witness->u, first.best_witness->u);
    EXPECT_EQ(second.best_witness->z, first.best_witness->z);
    EXPECT_EQ(second.best_witness->v, first.best_witness->v);
}

TEST(Falsifier, OptionValidation) {
    const auto [g, h] = corner_segments();
    FalsifyOptions opt;
    opt.delta = 0.0;
    EXPECT_THROW(falsify_uc(g, h, opt), ConfigError);
    opt.delta = 1e-3;
    opt.epsilon = 0.0;
    EXPECT_THROW(falsify_uc(g, h, opt), ConfigError);
    opt.epsilon = 0.1;
    opt.budget = 0;
    EXPECT_THROW(falsify_strongly_uc(g, h, opt), ConfigError);
}

TEST(Falsifier, EuclideanBoxesStaySilent) {
    // Facing Euclidean boxes: strict convexity pins every approach sequence.
    const NormTag l2 = NormTag::euclidean();
    const auto a = make_box({0, 0}, {1, 1}, l2);
    const auto b = make_box({3, 0}, {4, 1}, l2);
    FalsifyOptions opt;
    opt.delta = 1e-5;
    opt.epsilon = 0.05;
    opt.budget = 20000;
    EXPECT_EQ(falsify_uc(a, b, opt).verdict, PropertyVerdict::NoViolationFound);
    EXPECT_EQ(falsify_strongly_uc(a, b, opt).verdict, PropertyVerdict::NoViolationFound);

    // Grid oracle: no sampled triple satisfies both thresholds, so silence is
    // the ground truth rather than a search miss. A triple's defect is below
    // delta iff u and z each sit within anchor + delta of v, so the best
    // separation at v is the diameter of that feasible slice.
    const double sigma_ab = set_distance(a, b).value;
    std::vector<Point> us, vs;
    oracles::for_each_grid_param(2, 41,
                                 [&](const std::vector<double>& t) { us.push_back(param_to_point(a, t)); });
    oracles::for_each_grid_param(2, 41,
                                 [&](const std::vector<double>& t) { vs.push_back(param_to_point(b, t)); });
    double best_separation = 0.0;
    for (const Point& v : vs) {
        for (const double anchor : {sigma_ab, point_set_distance(v, a).value}) {
            std::vector<const Point*> slice;
            for (const Point& u : us)
                if (distance(u, v) <= anchor + opt.delta) slice.push_back(&u);
            for (std::size_t i = 0; i < slice.size(); ++i)
                for (std::size_t j = i + 1; j < slice.size(); ++j)
                    best_separation = std::max(best_separation, distance(*slice[i], *slice[j]));
        }
    }
    EXPECT_LT(best_separation, opt.epsilon);
}

TEST(SemiSharp, HoldsOnDisjointIntervals) {
    const auto g = make_interval(1, 2, NormTag::euclidean());
    const auto h = make_interval(-2, -1, NormTag::euclidean());
    const auto rep = check_semi_sharp_proximal(g, h);
    EXPECT_EQ(rep.verdict, SemiSharpVerdict::SemiSharpOnSamples);
    EXPECT_FALSE(rep.witness.has_value());
    EXPECT_GT(rep.points_checked, 0);
}

TEST(SemiSharp, TwoCompanionsAreACounterexample) {
    // The single point of G sits equidistant from both members of H.
    const auto g = make_cloud({pt({0, 0})});
    const auto h = make_cloud({pt({1, 0}), pt({-1, 0})});
    const auto rep = check_semi_sharp_proximal(g, h);
    ASSERT_EQ(rep.verdict, SemiSharpVerdict::CounterexampleFound);
    ASSERT_TRUE(rep.witness.has_value());
    EXPECT_EQ(rep.witness->swept, pt({0, 0}));
    EXPECT_GT(distance(rep.witness->first, rep.witness->second), 1e-2);
    EXPECT_THROW(check_semi_sharp_proximal(g, h, 0.0), ConfigError);
}

TEST(ImplicationProbe, InapplicableWhenThePairIsNotProximal) {
    const auto [g, h] = corner_segments();
    const auto rep = uc_implies_suc_probe(g, h);
    EXPECT_FALSE(rep.premise_holds);
    EXPECT_TRUE(rep.premise_counterexample.has_value());
    EXPECT_FALSE(rep.contradiction);
    EXPECT_FALSE(rep.uc.has_value());  // no falsifier run on an inapplicable premise
}

TEST(ImplicationProbe, SilentImplicationOnParallelSegments) {
    // Proximal pair: every point of each segment attains sigma(G, H).
    const auto g = make_segment(pt({1, 0}), pt({1, 1}));
    const auto h = make_segment(pt({2, 0}), pt({2, 1}));
    const auto rep = uc_implies_suc_probe(g, h);
    EXPECT_TRUE(rep.premise_holds);
    ASSERT_TRUE(rep.uc.has_value());
    ASSERT_TRUE(rep.strongly_uc.has_value());
    EXPECT_FALSE(rep.contradiction);
}

TEST(VerifyClass, HoldsAndViolatedOnGalleryMaps) {
    const auto mp = load("midpoint-pull");
    auto rep = verify_class(*mp.map, ContractionClass::CyclicContraction, 0.5, mp.gauge);
    EXPECT_EQ(rep.verdict, VerifyVerdict::HoldsOnSamples);
    EXPECT_GE(rep.worst_margin, -1e-12);
    EXPECT_EQ(rep.samples_checked, 10000);

    // The same map cannot work with a factor below 1/2.
    rep = verify_class(*mp.map, ContractionClass::CyclicContraction, 0.4, mp.gauge);
    EXPECT_EQ(rep.verdict, VerifyVerdict::ViolatedWithWitness);
    ASSERT_TRUE(rep.witness.has_value());

    // Plain cyclicity holds for every gallery map.
    for (const auto& name : gallery_names()) {
        const auto inst = load(name, name == "function-space" ? 8 : 0);
        if (!inst.map) continue;
        const auto cyc = verify_class(*inst.map, ContractionClass::Cyclic, std::nullopt, inst.gauge);
        EXPECT_EQ(cyc.verdict, VerifyVerdict::HoldsOnSamples) << name;
    }
}

TEST(VerifyClass, RelativelyNonexpansiveHoldsWithAnEqualityPair) {
    const auto mp = load("midpoint-pull");
    EXPECT_EQ(verify_class(*mp.map, ContractionClass::RelativelyNonexpansive, std::nullopt, mp.gauge)
                  .verdict,
              VerifyVerdict::HoldsOnSamples);

    // intervals-psi: sigma(Tx, Ty) = 1 - y <= x - y = sigma(x, y), with
    // equality exactly when x = 1. The probe pins the equality case.
    const auto ip = load("intervals-psi");
    VerifyOptions opt;
    opt.probe_pairs = {{pt({1.0}), pt({-2.0})}};
    const auto rep = verify_class(*ip.map, ContractionClass::RelativelyNonexpansive, std::nullopt,
                                  ip.gauge, opt);
    EXPECT_EQ(rep.verdict, VerifyVerdict::HoldsOnSamples);
    EXPECT_DOUBLE_EQ(rep.worst_margin, 0.0);
}

TEST(VerifyClass, PsiClassesOnIntervalsPsi) {
    const auto ip = load("intervals-psi");
    VerifyOptions opt;
    opt.probe_pairs = ip.probe_pairs;

    const auto holds = verify_class(*ip.map, ContractionClass::AlmostCyclicPsiContraction,
                                    std::nullopt, ip.gauge, opt);
    EXPECT_EQ(holds.verdict, VerifyVerdict::HoldsOnSamples);
    EXPECT_GE(holds.worst_margin, -1e-9);

    const auto violated =
        verify_class(*ip.map, ContractionClass::CyclicPsiContraction, std::nullopt, ip.gauge, opt);
    ASSERT_EQ(violated.verdict, VerifyVerdict::ViolatedWithWitness);
    // First violating pair is the instance's probe pair.
    EXPECT_EQ(violated.witness->first, ip.probe_pairs[0].first);
    EXPECT_EQ(violated.witness->second, ip.probe_pairs[0].second);
}

TEST(VerifyClass, ConfigValidation) {
    const auto mp = load("midpoint-pull");
    EXPECT_THROW(verify_class(*mp.map, ContractionClass::CyclicContraction, std::nullopt, mp.gauge),
                 ConfigError);
    EXPECT_THROW(verify_class(*mp.map, ContractionClass::CyclicContraction, 1.0, mp.gauge),
                 ConfigError);
    EXPECT_THROW(verify_class(*mp.map, ContractionClass::CyclicPsiContraction, std::nullopt,
                              std::nullopt),
                 ConfigError);
    VerifyOptions opt;
    opt.n_samples = 0;
    EXPECT_THROW(verify_class(*mp.map, ContractionClass::Cyclic, std::nullopt, mp.gauge, opt),
                 ConfigError);
}

TEST(VerifyClass, ClassNamesRoundTrip) {
    for (auto cls : {ContractionClass::Cyclic, ContractionClass::RelativelyNonexpansive,
                     ContractionClass::CyclicContraction, ContractionClass::AlmostCyclicContraction,
                     ContractionClass::CyclicPsiContraction,
                     ContractionClass::AlmostCyclicPsiContraction}) {
        const auto back = class_from_name(to_string(cls));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, cls);
    }
    EXPECT_FALSE(class_from_name("banach").has_value());
}

TEST(MinBeta, ExactFactorAndNotContractive) {
    const auto mp = load("midpoint-pull");
    const auto beta = estimate_min_beta(*mp.map, ContractionClass::CyclicContraction);
    ASSERT_TRUE(beta.has_value());
    EXPECT_NEAR(*beta, 0.5, 1e-6);

    const auto fp = load("fixed-point-halving");
    const auto fp_beta = estimate_min_beta(*fp.map, ContractionClass::CyclicContraction);
    ASSERT_TRUE(fp_beta.has_value());
    EXPECT_NEAR(*fp_beta, 0.5, 1e-6);

    // No single damping factor works for the function-space map: the dyadic
    // probe ladder pushes the required beta arbitrarily close to 1.
    const auto fs = load("function-space", 16);
    VerifyOptions opt;
    opt.probe_pairs = fs.probe_pairs;
    EXPECT_FALSE(
        estimate_min_beta(*fs.map, ContractionClass::AlmostCyclicContraction, opt).has_value());

    EXPECT_THROW(estimate_min_beta(*mp.map, ContractionClass::Cyclic), ConfigError);
}
