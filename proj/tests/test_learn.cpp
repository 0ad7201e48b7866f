#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "webcred/learn.hpp"
#include "webcred/model.hpp"
#include "webcred/rng.hpp"

using namespace webcred;
using learn::Mat;

namespace {

double training_error(const learn::AdaBoostBinary& model, const Mat& x,
                      const std::vector<int>& y) {
    double wrong = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (model.predict(x[i]) != y[i]) wrong += 1;
    return wrong / static_cast<double>(x.size());
}

} // namespace

TEST_CASE("adaboost: 1-D separable data with one round") {
    // hand computation: the stump x > 2.5 separates perfectly
    Mat x = {{1}, {2}, {3}, {4}};
    std::vector<int> y = {0, 0, 1, 1};
    learn::AdaBoostBinary model;
    model.fit(x, y, {1});
    CHECK(training_error(model, x, y) == 0.0);
    REQUIRE(model.stumps().size() == 1);
    CHECK(model.stumps()[0].threshold == doctest::Approx(2.5));
    CHECK(model.stumps()[0].alpha == doctest::Approx(std::log(1e9)));
}

TEST_CASE("adaboost: flipped labels flip polarity, same threshold") {
    Mat x = {{1}, {2}, {3}, {4}};
    learn::AdaBoostBinary a, b;
    a.fit(x, {0, 0, 1, 1}, {1});
    b.fit(x, {1, 1, 0, 0}, {1});
    REQUIRE(a.stumps().size() == 1);
    REQUIRE(b.stumps().size() == 1);
    CHECK(a.stumps()[0].threshold == b.stumps()[0].threshold);
    CHECK(a.stumps()[0].polarity == -b.stumps()[0].polarity);
}

TEST_CASE("adaboost: xor-style data reaches high training accuracy") {
    // frozen reference fixture: 40 uniform points, labels from the quadrant
    // parity; at 50 rounds the ensemble memorizes nearly all of them
    SplitMix64 rng(7);
    Mat x;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i) {
        double a = rng.uniform(), b = rng.uniform();
        x.push_back({a, b});
        y.push_back((a > 0.5) != (b > 0.5) ? 1 : 0);
    }
    learn::AdaBoostBinary model;
    model.fit(x, y, {50});
    CHECK(training_error(model, x, y) < 0.1);
}

TEST_CASE("adaboost: exponential training bound is non-increasing per round") {
    // the 0-1 training error itself is not monotone in rounds (prefix
    // ensembles can flip borderline points back and forth); the quantity
    // AdaBoost provably drives down every round is the exponential bound
    // prod_t 2*sqrt(eps_t (1 - eps_t)), recoverable from the stored alphas
    SplitMix64 rng(11);
    for (int fixture = 0; fixture < 3; ++fixture) {
        Mat x;
        std::vector<int> y;
        for (int i = 0; i < 40; ++i) {
            double a = rng.uniform(), b = rng.uniform();
            x.push_back({a, b});
            y.push_back(a + 0.3 * b + 0.1 * rng.uniform() > 0.6 ? 1 : 0);
        }
        if (std::count(y.begin(), y.end(), 1) == 0 ||
            std::count(y.begin(), y.end(), 0) == 0)
            continue;
        learn::AdaBoostBinary model;
        model.fit(x, y, {40});
        double bound = 1.0;
        for (const auto& stump : model.stumps()) {
            double eps = 1.0 / (1.0 + std::exp(stump.alpha));
            double factor = 2.0 * std::sqrt(eps * (1.0 - eps));
            CHECK(factor <= 1.0 + 1e-12);
            bound *= factor;
        }
        // the bound dominates the final training error
        CHECK(training_error(model, x, y) <= bound + 1e-12);

        // and more rounds do not hurt the end state on these fixtures
        learn::AdaBoostBinary one_round;
        one_round.fit(x, y, {1});
        CHECK(training_error(model, x, y) <=
              training_error(one_round, x, y) + 1e-12);
    }
}

TEST_CASE("gradient boosting regression contracts") {
    SUBCASE("constant target predicts the constant with zero trees") {
        learn::GradientBoostingRegressor model;
        model.fit({{1}, {2}, {3}}, {4.0, 4.0, 4.0}, {100, 3, 0.1});
        CHECK(model.trees().empty());
        CHECK(model.predict({10}) == 4.0);
    }
    SUBCASE("zero trees predict the target mean") {
        learn::GradientBoostingRegressor model;
        model.fit({{1}, {2}, {3}}, {1.0, 2.0, 6.0}, {0, 3, 0.1});
        CHECK(model.predict({2}) == doctest::Approx(3.0));
    }
    SUBCASE("monotone 1-D data reaches high R^2 with 20 trees") {
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 50; ++i) {
            x.push_back({static_cast<double>(i)});
            y.push_back(2.0 * i + 1);
        }
        learn::GradientBoostingRegressor model;
        model.fit(x, y, {20, 3, 0.3});
        std::vector<double> yhat;
        for (const auto& row : x) yhat.push_back(model.predict(row));
        auto m = oracles::regression_metrics(y, yhat);
        CHECK(m.r2 > 0.9);
    }
    SUBCASE("training loss non-increasing in tree count") {
        SplitMix64 rng(5);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 60; ++i) {
            double a = rng.uniform();
            x.push_back({a, rng.uniform()});
            y.push_back(std::sin(5 * a) + 0.1 * rng.uniform());
        }
        double prev = 1e300;
        for (int t : {0, 5, 10, 25, 50, 100}) {
            learn::GradientBoostingRegressor model;
            model.fit(x, y, {t, 3, 0.1});
            double sse = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double e = y[i] - model.predict(x[i]);
                sse += e * e;
            }
            CHECK(sse <= prev + 1e-9);
            prev = sse;
        }
    }
}

TEST_CASE("gradient boosting binary classification") {
    SUBCASE("zero trees give the prior log-odds") {
        learn::GradientBoostingBinary model;
        model.fit({{0}, {1}, {2}, {3}}, {0, 1, 1, 1}, {0, 3, 0.1});
        double p = 0.75;
        CHECK(model.positive_probability({9}) ==
              doctest::Approx(1.0 / (1.0 + std::exp(-std::log(p / (1 - p))))));
    }
    SUBCASE("separable data is learned") {
        Mat x;
        std::vector<int> y;
        for (int i = 0; i < 30; ++i) {
            x.push_back({static_cast<double>(i)});
            y.push_back(i < 15 ? 0 : 1);
        }
        learn::GradientBoostingBinary model;
        model.fit(x, y, {30, 2, 0.3});
        int correct = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            correct += (model.positive_probability(x[i]) > 0.5) == (y[i] == 1);
        CHECK(correct == 30);
    }
    SUBCASE("constant labels degrade to the prior") {
        learn::GradientBoostingBinary model;
        model.fit({{0}, {1}}, {1, 1}, {10, 3, 0.1});
        CHECK(model.trees().empty());
        CHECK(model.positive_probability({5}) > 0.99);
    }
}

TEST_CASE("ridge regression") {
    SUBCASE("exactly linear data with lambda 0 recovers coefficients") {
        SplitMix64 rng(3);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 40; ++i) {
            double a = rng.uniform() * 10, b = rng.uniform() * 10;
            x.push_back({a, b});
            y.push_back(2.0 * a - 1.0 * b + 3.0);
        }
        learn::RidgeRegressor model;
        model.fit(x, y, 0.0);
        double sse = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double e = y[i] - model.predict(x[i]);
            sse += e * e;
        }
        CHECK(sse < 1e-12);
    }
    SUBCASE("lambda 0 matches the normal-equation solution within 1e-8") {
        SplitMix64 rng(17);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 30; ++i) {
            double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
            x.push_back({a, b, c});
            y.push_back(3 * a - 2 * b + 0.5 * c + rng.uniform());
        }
        learn::RidgeRegressor model;
        model.fit(x, y, 0.0);

        // oracle operates on the same standardized+centered problem
        learn::Standardizer sc;
        sc.fit(x);
        double ymean = 0;
        for (double v : y) ymean += v;
        ymean /= static_cast<double>(y.size());
        Mat z;
        std::vector<double> yc;
        for (std::size_t i = 0; i < x.size(); ++i) {
            z.push_back(sc.transform(x[i]));
            yc.push_back(y[i] - ymean);
        }
        auto beta = oracles::ols_normal_equations(z, yc);
        REQUIRE(beta.size() == model.coefficients().size());
        for (std::size_t j = 0; j < beta.size(); ++j)
            CHECK(std::fabs(beta[j] - model.coefficients()[j]) < 1e-8);
    }
    SUBCASE("huge lambda shrinks to the mean") {
        Mat x = {{0}, {1}, {2}, {3}};
        std::vector<double> y = {1, 3, 5, 7};
        learn::RidgeRegressor model;
        model.fit(x, y, 1e12);
        CHECK(std::fabs(model.predict({1.5}) - 4.0) < 1e-3);
    }
    SUBCASE("duplicate feature columns share the coefficient symmetrically") {
        SplitMix64 rng(23);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 20; ++i) {
            double a = rng.uniform();
            x.push_back({a, a});
            y.push_back(4 * a + rng.uniform() * 0.01);
        }
        learn::RidgeRegressor model;
        model.fit(x, y, 1.0);
        CHECK(model.coefficients()[0] ==
              doctest::Approx(model.coefficients()[1]).epsilon(1e-10));
    }
}

TEST_CASE("linear svr") {
    SUBCASE("targets inside the tube keep the zero weight vector") {
        Mat x = {{1, 2}, {3, 4}, {5, 6}};
        std::vector<double> y = {0.05, -0.03, 0.08};
        learn::LinearSvr model;
        model.fit(x, y, {0.1, 1e-3, 50, 7});
        for (double w : model.weights()) CHECK(w == 0.0);
        CHECK(model.bias() == 0.0);
    }
    SUBCASE("exactly linear data trains to low MAE") {
        SplitMix64 rng(31);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 60; ++i) {
            double a = rng.uniform() * 4 - 2;
            x.push_back({a});
            y.push_back(1.5 * a);
        }
        learn::LinearSvr model;
        model.fit(x, y, {0.01, 1e-4, 400, 7});
        double mae = 0;
        for (std::size_t i = 0; i < x.size(); ++i) mae += std::fabs(y[i] - model.predict(x[i]));
        mae /= static_cast<double>(x.size());
        CHECK(mae < 0.05);
    }
    SUBCASE("fixed seed gives identical weights across runs") {
        SplitMix64 rng(37);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 25; ++i) {
            double a = rng.uniform(), b = rng.uniform();
            x.push_back({a, b});
            y.push_back(a - b);
        }
        learn::LinearSvr m1, m2;
        m1.fit(x, y, {0.1, 1e-3, 100, 99});
        m2.fit(x, y, {0.1, 1e-3, 100, 99});
        CHECK(m1.weights() == m2.weights());
        CHECK(m1.bias() == m2.bias());
    }
}

TEST_CASE("anova percentile selection") {
    SUBCASE("label-copy feature beats pure noise") {
        SplitMix64 rng(41);
        Mat x;
        std::vector<int> y;
        for (int i = 0; i < 30; ++i) {
            int label = static_cast<int>(rng.below(2));
            x.push_back({static_cast<double>(label), rng.uniform()});
            y.push_back(label);
        }
        auto scores = learn::anova_f_scores(x, y);
        auto mask = learn::select_top_percentile(scores, 50); // 50% of d=2 -> 1 feature
        REQUIRE(mask.size() == 1);
        CHECK(mask[0] == 0);
    }
    SUBCASE("percentile 100 keeps everything") {
        Mat x = {{1, 2, 3}, {2, 1, 0}, {0, 1, 2}, {3, 3, 3}};
        std::vector<int> y = {0, 1, 0, 1};
        auto mask = learn::select_top_percentile(learn::anova_f_scores(x, y), 100);
        CHECK(mask == std::vector<std::size_t>{0, 1, 2});
    }
    SUBCASE("constant feature scores zero, never beats a varying one") {
        Mat x = {{5, 0.1}, {5, 0.9}, {5, 0.2}, {5, 0.8}};
        std::vector<int> y = {0, 1, 0, 1};
        auto scores = learn::anova_f_scores(x, y);
        CHECK(scores[0] == 0.0);
        auto mask = learn::select_top_percentile(scores, 50);
        REQUIRE(mask.size() == 1);
        CHECK(mask[0] == 1);
    }
    SUBCASE("column permutation permutes the mask identically") {
        SplitMix64 rng(43);
        Mat x;
        std::vector<int> y;
        for (int i = 0; i < 40; ++i) {
            int label = static_cast<int>(rng.below(2));
            double noise = rng.uniform();
            x.push_back({noise, label + 0.2 * rng.uniform(), rng.uniform(), label * 1.0});
            y.push_back(label);
        }
        auto scores = learn::anova_f_scores(x, y);
        Mat xp;
        for (const auto& row : x) xp.push_back({row[3], row[2], row[1], row[0]});
        auto scores_p = learn::anova_f_scores(xp, y);
        for (std::size_t j = 0; j < 4; ++j) {
            if (std::isinf(scores[j])) {
                CHECK(std::isinf(scores_p[3 - j])); // perfect separators stay perfect
            } else {
                CHECK(scores[j] == doctest::Approx(scores_p[3 - j]).epsilon(1e-12));
            }
        }
    }
    SUBCASE("regression scores favor the informative feature") {
        SplitMix64 rng(47);
        Mat x;
        std::vector<double> y;
        for (int i = 0; i < 30; ++i) {
            double a = rng.uniform();
            x.push_back({a, rng.uniform()});
            y.push_back(3 * a + 0.05 * rng.uniform());
        }
        auto scores = learn::regression_f_scores(x, y);
        CHECK(scores[0] > scores[1]);
    }
}

TEST_CASE("stack_features") {
    std::vector<double> lexical(10, 0.5);
    learn::TagProbs probs;
    probs.probs = {0.25, 0.75};
    probs.trained_folds_mask = ~(1u << 3) & 0x3FFu; // trained on every fold but 3

    SUBCASE("shape: d=10 lexical + 2-class probs = 12") {
        auto stacked = learn::stack_features(lexical, probs, 3);
        CHECK(stacked.size() == 12);
        CHECK(stacked[10] == 0.25);
        CHECK(stacked[11] == 0.75);
    }
    SUBCASE("probabilities sum to one") {
        double s = probs.probs[0] + probs.probs[1];
        CHECK(std::fabs(s - 1.0) < 1e-9);
    }
    SUBCASE("leakage guard rejects a producer that saw the evaluation fold") {
        CHECK_THROWS_AS(learn::stack_features(lexical, probs, 2), LeakageError);
    }
    SUBCASE("schema extension names the classes") {
        auto schema = learn::stacked_schema({"f0", "f1"}, {"low", "high"});
        REQUIRE(schema.size() == 4);
        CHECK(schema[2] == "html2seq_prob_low");
        CHECK(schema[3] == "html2seq_prob_high");
    }
}

TEST_CASE("model artifact round trip") {
    namespace fs = std::filesystem;
    SplitMix64 rng(53);
    Mat x;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i) {
        double a = rng.uniform(), b = rng.uniform();
        x.push_back({a, b, rng.uniform()});
        y.push_back(a + b > 1.0 ? 1 : 0);
    }

    learn::ModelArtifact art;
    art.spec = learn::LearnerSpec::parse("gboost");
    art.spec.gb = {25, 2, 0.2};
    art.schema = {"f0", "f1", "f2"};
    art.selection_mask = {0, 1, 2};
    art.class_names = {"low", "high"};
    art.classifier.fit(x, y, 2, art.spec);

    auto path = fs::temp_directory_path() / "webcred_model_test.txt";
    art.save(path.string());
    auto loaded = learn::ModelArtifact::load(path.string());

    SUBCASE("identical predictions after reload") {
        for (const auto& row : x) {
            auto a = art.predict_proba(row, art.schema_fingerprint());
            auto b = loaded.predict_proba(row, loaded.schema_fingerprint());
            REQUIRE(a.size() == b.size());
            for (std::size_t c = 0; c < a.size(); ++c) CHECK(a[c] == b[c]);
        }
    }
    SUBCASE("byte-identical reserialization") {
        CHECK(art.to_string() == loaded.to_string());
    }
    SUBCASE("schema fingerprint mismatch raises SchemaError") {
        CHECK_THROWS_AS(art.predict_proba(x[0], "0000000000000000"), SchemaError);
    }
    SUBCASE("probabilities are a distribution") {
        auto p = art.predict_proba(x[0], art.schema_fingerprint());
        double s = 0;
        for (double v : p) {
            CHECK(v >= 0.0);
            s += v;
        }
        CHECK(std::fabs(s - 1.0) < 1e-9);
    }
    fs::remove(path);
}

TEST_CASE("adaboost and svr artifacts round trip through files") {
    namespace fs = std::filesystem;
    SplitMix64 rng(67);
    Mat x;
    std::vector<int> y;
    std::vector<double> yr;
    for (int i = 0; i < 30; ++i) {
        double a = rng.uniform(), b = rng.uniform();
        x.push_back({a, b});
        y.push_back(a > b ? 1 : 0);
        yr.push_back(2 * a - b);
    }

    SUBCASE("adaboost") {
        learn::ModelArtifact art;
        art.spec = learn::LearnerSpec::parse("adaboost");
        art.spec.ada.rounds = 15;
        art.schema = {"f0", "f1"};
        art.selection_mask = {0, 1};
        art.class_names = {"low", "high"};
        art.classifier.fit(x, y, 2, art.spec);
        auto path = fs::temp_directory_path() / "webcred_ada_rt.txt";
        art.save(path.string());
        auto loaded = learn::ModelArtifact::load(path.string());
        for (const auto& row : x)
            CHECK(art.predict_proba(row, art.schema_fingerprint()) ==
                  loaded.predict_proba(row, loaded.schema_fingerprint()));
        CHECK(art.to_string() == loaded.to_string());
        fs::remove(path);
    }
    SUBCASE("svr") {
        learn::ModelArtifact art;
        art.spec = learn::LearnerSpec::parse("svr");
        art.spec.svr = {0.05, 1e-3, 80, 11};
        art.schema = {"f0", "f1"};
        art.selection_mask = {0, 1};
        art.regressor.fit(x, yr, art.spec);
        auto path = fs::temp_directory_path() / "webcred_svr_rt.txt";
        art.save(path.string());
        auto loaded = learn::ModelArtifact::load(path.string());
        for (const auto& row : x)
            CHECK(art.predict_value(row, art.schema_fingerprint()) ==
                  loaded.predict_value(row, loaded.schema_fingerprint()));
        fs::remove(path);
    }
    SUBCASE("naive bayes") {
        Mat counts;
        for (int i = 0; i < 20; ++i)
            counts.push_back({static_cast<double>(rng.below(4)),
                              static_cast<double>(rng.below(4)),
                              static_cast<double>(rng.below(4))});
        std::vector<int> labels;
        for (int i = 0; i < 20; ++i) labels.push_back(i % 2);
        learn::ModelArtifact art;
        art.spec = learn::LearnerSpec::parse("nb");
        art.schema = {"t0", "t1", "t2"};
        art.selection_mask = {0, 1, 2};
        art.class_names = {"low", "high"};
        art.classifier.fit(counts, labels, 2, art.spec);
        auto path = fs::temp_directory_path() / "webcred_nb_rt.txt";
        art.save(path.string());
        auto loaded = learn::ModelArtifact::load(path.string());
        for (const auto& row : counts)
            CHECK(art.predict_proba(row, art.schema_fingerprint()) ==
                  loaded.predict_proba(row, loaded.schema_fingerprint()));
        fs::remove(path);
    }
    SUBCASE("gradient boosting regressor") {
        learn::ModelArtifact art;
        art.spec = learn::LearnerSpec::parse("gboost");
        art.spec.gb = {15, 2, 0.2};
        art.schema = {"f0", "f1"};
        art.selection_mask = {0, 1};
        art.regressor.fit(x, yr, art.spec);
        auto path = fs::temp_directory_path() / "webcred_gbr_rt.txt";
        art.save(path.string());
        auto loaded = learn::ModelArtifact::load(path.string());
        for (const auto& row : x)
            CHECK(art.predict_value(row, art.schema_fingerprint()) ==
                  loaded.predict_value(row, loaded.schema_fingerprint()));
        fs::remove(path);
    }
}

TEST_CASE("regression artifact round trip") {
    namespace fs = std::filesystem;
    Mat x = {{0}, {1}, {2}, {3}, {4}};
    std::vector<double> y = {1, 3, 5, 7, 9};
    learn::ModelArtifact art;
    art.spec = learn::LearnerSpec::parse("ridge");
    art.spec.ridge_lambda = 0.1;
    art.schema = {"f0"};
    art.selection_mask = {0};
    art.regressor.fit(x, y, art.spec);

    auto path = fs::temp_directory_path() / "webcred_ridge_test.txt";
    art.save(path.string());
    auto loaded = learn::ModelArtifact::load(path.string());
    for (const auto& row : x)
        CHECK(art.predict_value(row, art.schema_fingerprint()) ==
              loaded.predict_value(row, loaded.schema_fingerprint()));
    fs::remove(path);
}

TEST_CASE("training determinism: identical artifacts byte for byte") {
    SplitMix64 rng(59);
    Mat x;
    std::vector<int> y;
    for (int i = 0; i < 30; ++i) {
        x.push_back({rng.uniform(), rng.uniform()});
        y.push_back(static_cast<int>(rng.below(2)));
    }
    auto train_once = [&]() {
        learn::ModelArtifact art;
        art.spec = learn::LearnerSpec::parse("adaboost");
        art.spec.ada.rounds = 20;
        art.schema = {"f0", "f1"};
        art.selection_mask = {0, 1};
        art.class_names = {"low", "high"};
        art.classifier.fit(x, y, 2, art.spec);
        return art.to_string();
    };
    CHECK(train_once() == train_once());
}
