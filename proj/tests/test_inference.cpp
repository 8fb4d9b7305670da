#include <doctest.h>

#include <cmath>

#include "fisgen/inference.hpp"
#include "fisgen/random.hpp"

using namespace fisgen;

namespace {

Partition uniform_partition(const std::string& name, int m, double spacing,
                            double origin = 0.0) {
  Partition partition;
  partition.variable = name;
  for (int j = 0; j < m; ++j) {
    partition.labels.push_back("L" + std::to_string(j + 1));
    TriangularMf mf;
    mf.b = origin + j * spacing;
    mf.a = j == 0 ? mf.b : origin + (j - 1) * spacing;
    mf.c = j == m - 1 ? mf.b : origin + (j + 1) * spacing;
    mf.shape = j == 0 ? MfShape::left_shoulder
               : j == m - 1 ? MfShape::right_shoulder
                            : MfShape::interior;
    partition.mfs.push_back(mf);
  }
  return partition;
}

Rule make_rule(std::vector<int> antecedents, int consequent, double weight) {
  Rule rule;
  rule.antecedents = std::move(antecedents);
  rule.consequent = consequent;
  rule.weight = weight;
  return rule;
}

FisModel two_input_model(std::vector<Rule> rules) {
  FisModel model;
  model.input_partitions = {uniform_partition("x1", 5, 10.0),
                            uniform_partition("x2", 5, 10.0)};
  model.output_partition = uniform_partition("y", 5, 1000.0);
  model.rules.rules = std::move(rules);
  return model;
}

FisModel random_model(Rng& rng, int inputs, int mfs, int rule_count) {
  FisModel model;
  for (int v = 0; v < inputs; ++v)
    model.input_partitions.push_back(
        uniform_partition("x" + std::to_string(v), mfs, 5.0 + 10.0 * uniform01(rng)));
  model.output_partition = uniform_partition("y", mfs, 100.0 + 200.0 * uniform01(rng));
  for (int r = 0; r < rule_count; ++r) {
    std::vector<int> antecedents;
    for (int v = 0; v < inputs; ++v)
      antecedents.push_back(1 + static_cast<int>(uniform_below(rng, mfs)));
    model.rules.rules.push_back(
        make_rule(std::move(antecedents),
                  1 + static_cast<int>(uniform_below(rng, mfs)),
                  0.1 + 2.0 * uniform01(rng)));
  }
  return model;
}

}  // namespace

TEST_CASE("fire_rule conjunction fixtures") {
  const std::vector<Partition> inputs = {uniform_partition("a", 3, 10.0),
                                         uniform_partition("b", 3, 10.0)};
  SUBCASE("all antecedent memberships 1 with weight 1") {
    const Rule rule = make_rule({2, 2}, 1, 1.0);
    Eigen::VectorXd x(2);
    x << 10.0, 10.0;  // exactly on both centers
    CHECK(fire_rule(rule, inputs, x, FiringScheme::product) == 1.0);
    CHECK(fire_rule(rule, inputs, x, FiringScheme::min) == 1.0);
  }
  SUBCASE("any zero membership annihilates both schemes") {
    const Rule rule = make_rule({1, 3}, 1, 2.5);
    Eigen::VectorXd x(2);
    x << 0.0, 0.0;  // second antecedent (right shoulder at 20) reads 0
    CHECK(fire_rule(rule, inputs, x, FiringScheme::product) == 0.0);
    CHECK(fire_rule(rule, inputs, x, FiringScheme::min) == 0.0);
  }
  SUBCASE("product of memberships 0.5 and 0.8 with weight 2") {
    const Rule rule = make_rule({2, 2}, 1, 2.0);
    Eigen::VectorXd x(2);
    x << 5.0, 8.0;  // degrees 0.5 and 0.8 on the interior triangle at 10
    CHECK(fire_rule(rule, inputs, x, FiringScheme::product) ==
          doctest::Approx(2.0 * 0.5 * 0.8).epsilon(1e-12));
    CHECK(fire_rule(rule, inputs, x, FiringScheme::min) ==
          doctest::Approx(2.0 * 0.5).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch") {
    const Rule rule = make_rule({1, 1}, 1, 1.0);
    Eigen::VectorXd x(1);
    x << 0.0;
    CHECK_THROWS_AS(fire_rule(rule, inputs, x, FiringScheme::product),
                    DimensionMismatch);
  }
}

TEST_CASE("predict weighted-center fixtures") {
  SUBCASE("single fully fired rule lands on its consequent center") {
    FisModel model = two_input_model({make_rule({2, 2}, 3, 1.7)});
    Eigen::VectorXd x(2);
    x << 10.0, 10.0;
    const Prediction prediction = predict(model, x);
    REQUIRE(prediction.value.has_value());
    CHECK(*prediction.value == doctest::Approx(2000.0));  // center of MF 3
    CHECK(prediction.fired_rule_count == 1);
  }
  SUBCASE("two equal strengths average the centers") {
    // Both rules fire identically; consequent centers 1000 and 3000 -> 2000.
    FisModel model =
        two_input_model({make_rule({2, 2}, 2, 1.0), make_rule({2, 2}, 4, 1.0)});
    Eigen::VectorXd x(2);
    x << 10.0, 10.0;
    CHECK(*predict(model, x).value == doctest::Approx(2000.0));
  }
  SUBCASE("strengths 0.25/0.75 over centers 1000/2000 give 1750") {
    // Same antecedents, weights 0.25 and 0.75, both fully fired.
    FisModel model =
        two_input_model({make_rule({2, 2}, 2, 0.25), make_rule({2, 2}, 3, 0.75)});
    Eigen::VectorXd x(2);
    x << 10.0, 10.0;
    const Prediction prediction = predict(model, x);
    CHECK(*prediction.value == doctest::Approx(1750.0).epsilon(1e-12));
    CHECK(prediction.total_firing_mass == doctest::Approx(1.0));
    CHECK(prediction.fired_rule_count == 2);
  }
  SUBCASE("no firing mass leaves the value absent") {
    FisModel model = two_input_model({make_rule({5, 5}, 1, 1.0)});
    Eigen::VectorXd x(2);
    x << 0.0, 0.0;
    const Prediction prediction = predict(model, x);
    CHECK_FALSE(prediction.value.has_value());
    CHECK(prediction.fired_rule_count == 0);
    CHECK(prediction.total_firing_mass == 0.0);
  }
}

TEST_CASE("prediction lies within the fired consequent center range") {
  Rng rng(606);
  for (int trial = 0; trial < 25; ++trial) {
    const FisModel model = random_model(rng, 2, 5, 6);
    Eigen::VectorXd x(2);
    x << 40.0 * uniform01(rng), 40.0 * uniform01(rng);
    const Prediction prediction = predict(model, x);
    if (!prediction.value) continue;
    double lo = 1e300;
    double hi = -1e300;
    for (const Rule& rule : model.rules.rules) {
      if (fire_rule(rule, model.input_partitions, x, model.firing_scheme) > 0.0) {
        lo = std::min(lo, model.output_partition.mf(rule.consequent).b);
        hi = std::max(hi, model.output_partition.mf(rule.consequent).b);
      }
    }
    CHECK(*prediction.value >= lo - 1e-9);
    CHECK(*prediction.value <= hi + 1e-9);
  }
}

TEST_CASE("scaling all rule weights leaves predictions unchanged") {
  Rng rng(321);
  for (int trial = 0; trial < 20; ++trial) {
    FisModel model = random_model(rng, 2, 5, 5);
    FisModel scaled = model;
    const double factor = 0.01 + 100.0 * uniform01(rng);
    for (Rule& rule : scaled.rules.rules) rule.weight *= factor;

    for (int probe = 0; probe < 10; ++probe) {
      Eigen::VectorXd x(2);
      x << 50.0 * uniform01(rng), 50.0 * uniform01(rng);
      const Prediction a = predict(model, x);
      const Prediction b = predict(scaled, x);
      CHECK(a.value.has_value() == b.value.has_value());
      CHECK(a.fired_rule_count == b.fired_rule_count);
      if (a.value) CHECK(std::fabs(*a.value - *b.value) <= 1e-12 * std::fabs(*a.value));
    }
  }
}

TEST_CASE("coverage is monotone under rule addition") {
  Rng rng(4040);
  for (int trial = 0; trial < 10; ++trial) {
    FisModel small = random_model(rng, 2, 5, 3);
    FisModel large = small;
    for (int extra = 0; extra < 3; ++extra) {
      std::vector<int> antecedents = {1 + static_cast<int>(uniform_below(rng, 5)),
                                      1 + static_cast<int>(uniform_below(rng, 5))};
      large.rules.rules.push_back(
          make_rule(std::move(antecedents),
                    1 + static_cast<int>(uniform_below(rng, 5)), 1.0));
    }
    Eigen::MatrixXd test_points(15, 3);
    for (int i = 0; i < 15; ++i) {
      test_points(i, 0) = 50.0 * uniform01(rng);
      test_points(i, 1) = 50.0 * uniform01(rng);
      test_points(i, 2) = 1000.0 * uniform01(rng);
    }
    CHECK(predict_set(large, test_points).coverage >=
          predict_set(small, test_points).coverage);
  }
}

TEST_CASE("predict_set coverage accounting") {
  SUBCASE("model covering everything reports 1.0") {
    FisModel model = two_input_model({make_rule({1, 1}, 1, 1.0)});
    // Left shoulders are 1 at and below the first center.
    Eigen::MatrixXd test_points(20, 3);
    test_points.setZero();
    const SetPrediction set = predict_set(model, test_points);
    CHECK(set.coverage == 1.0);
    CHECK(set.predictions.size() == 20);
  }
  SUBCASE("no rule firing anywhere reports 0.0") {
    FisModel model = two_input_model({make_rule({5, 5}, 1, 1.0)});
    Eigen::MatrixXd test_points(5, 3);
    test_points.setZero();
    CHECK(predict_set(model, test_points).coverage == 0.0);
  }
  SUBCASE("16 of 20 covered reports 0.80") {
    FisModel model = two_input_model({make_rule({1, 1}, 1, 1.0)});
    Eigen::MatrixXd test_points(20, 3);
    test_points.setZero();
    for (int i = 0; i < 4; ++i) {
      test_points(i, 0) = 40.0;  // outside the first triangle's support
      test_points(i, 1) = 40.0;
    }
    CHECK(predict_set(model, test_points).coverage == doctest::Approx(0.80));
  }
  SUBCASE("empty test set") {
    FisModel model = two_input_model({make_rule({1, 1}, 1, 1.0)});
    CHECK_THROWS_AS(predict_set(model, Eigen::MatrixXd(0, 3)), EmptyTestSet);
  }
}

TEST_CASE("model validation catches bad indices") {
  FisModel model = two_input_model({make_rule({1, 1}, 1, 1.0)});
  CHECK_NOTHROW(validate(model));

  FisModel bad = model;
  bad.rules.rules[0].antecedents[0] = 6;  // partitions have 5 functions
  CHECK_THROWS_AS(validate(bad), JsonSchemaError);

  bad = model;
  bad.rules.rules[0].consequent = 0;
  CHECK_THROWS_AS(validate(bad), JsonSchemaError);

  bad = model;
  bad.rules.rules.clear();
  CHECK_THROWS_AS(validate(bad), JsonSchemaError);
}
