#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "ksep/dataset.hpp"

using namespace ksep;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path("/tmp/ksep_test_" + name) {
    if (!content.empty()) {
      std::ofstream out(path);
      out << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("hypercube datasets carry vertex coordinates and signed labels") {
  auto d = from_boolean(BooleanFunction::parity(2));
  REQUIRE(d.size() == 4);
  CHECK(d.dim() == 2);
  CHECK(d.points[0] == std::vector<double>{0, 0});
  CHECK(d.points[1] == std::vector<double>{0, 1});
  CHECK(d.points[2] == std::vector<double>{1, 0});
  CHECK(d.points[3] == std::vector<double>{1, 1});
  CHECK(d.labels == std::vector<int>{-1, +1, +1, -1});
  CHECK(d.provenance == "function:n=2,index=6");
  CHECK(!d.degenerate);

  auto c = from_boolean(BooleanFunction::constant(2, false));
  CHECK(c.degenerate);
}

TEST_CASE("csv round trip preserves points, labels and names") {
  auto d = from_boolean(BooleanFunction::from_index(3, 27));
  d.feature_names = {"x1", "x2", "x3"};
  d.label_names[0] = "off";
  d.label_names[1] = "on";
  TempFile f("roundtrip.csv");
  save_csv(d, f.path);
  auto back = load_csv(f.path);
  CHECK(back.points == d.points);
  CHECK(back.labels == d.labels);
  CHECK(back.feature_names == d.feature_names);
  CHECK(back.label_names[0] == "off");
  CHECK(back.label_names[1] == "on");
}

TEST_CASE("csv reader handles quoting, headers and delimiters") {
  TempFile f("quoted.csv",
             "\"feat, one\";b;class\n"
             "0.5;1;\"yes\"\n"
             "-2;0.25;\"no\"\n"
             "1e-3;3;yes\n");
  CsvOptions o;
  o.delimiter = ';';
  auto d = load_csv(f.path, o);
  REQUIRE(d.size() == 3);
  CHECK(d.feature_names[0] == "feat, one");
  CHECK(d.points[0] == std::vector<double>{0.5, 1});
  CHECK(d.points[2][0] == doctest::Approx(1e-3));
  // labels sort ascending: "no" -> -1, "yes" -> +1
  CHECK(d.labels == std::vector<int>{+1, -1, +1});
  CHECK(d.label_names[0] == "no");
  CHECK(d.label_names[1] == "yes");
}

TEST_CASE("csv reader reports what is wrong and where") {
  SUBCASE("three label values") {
    TempFile f("threelab.csv", "a,b,y\n1,2,red\n3,4,green\n5,6,blue\n");
    try {
      load_csv(f.path);
      FAIL("expected a label error");
    } catch (const std::runtime_error& e) {
      std::string msg = e.what();
      CHECK(msg.find("red") != std::string::npos);
      CHECK(msg.find("green") != std::string::npos);
      CHECK(msg.find("blue") != std::string::npos);
    }
  }
  SUBCASE("non-numeric feature names row and column") {
    TempFile f("badnum.csv", "a,b,y\n1,2,p\n1,oops,q\n");
    try {
      load_csv(f.path);
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      std::string msg = e.what();
      CHECK(msg.find("row 3") != std::string::npos);
      CHECK(msg.find("column 2") != std::string::npos);
    }
  }
  SUBCASE("short row") {
    TempFile f("short.csv", "a,b,y\n1,2,p\n1,q\n");
    CHECK_THROWS_AS(load_csv(f.path), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_csv("/tmp/ksep_test_does_not_exist.csv"), std::runtime_error);
  }
}

TEST_CASE("label column can sit anywhere") {
  TempFile f("labfirst.csv", "y,a,b\np,1,2\nq,3,4\n");
  CsvOptions o;
  o.label_column = 0;
  auto d = load_csv(f.path, o);
  CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
  CHECK(d.points[0] == std::vector<double>{1, 2});
  CHECK(d.labels == std::vector<int>{-1, +1});
}

TEST_CASE("standardization is opt-in, exact zero mean, constant-safe") {
  LabeledDataset d;
  d.points = {{1, 5}, {3, 5}, {5, 5}};
  d.labels = {-1, +1, -1};
  standardize(d);
  double mean = (d.points[0][0] + d.points[1][0] + d.points[2][0]) / 3;
  CHECK(mean == doctest::Approx(0.0));
  double var = 0;
  for (auto& p : d.points) var += p[0] * p[0];
  CHECK(var / 3 == doctest::Approx(1.0));
  // second feature is constant: left alone rather than divided by zero
  CHECK(d.points[0][1] == doctest::Approx(5.0));
}

TEST_CASE("stratified folds balance both classes") {
  auto d = from_boolean(BooleanFunction::parity(3));  // 4 plus, 4 minus
  TrainConfig cfg;
  CVPlan plan;
  plan.folds = 4;
  plan.seed = 5;
  auto r = crossvalidate(d, cfg, plan);
  REQUIRE(r.fold_accuracy.size() == 4);
  REQUIRE(r.fold_k.size() == 4);
  CHECK(r.warnings.empty());
  double mean = 0;
  for (double a : r.fold_accuracy) mean += a;
  mean /= 4;
  CHECK(r.mean_accuracy == doctest::Approx(mean));

  auto again = crossvalidate(d, cfg, plan);
  CHECK(again.fold_accuracy == r.fold_accuracy);
  CHECK(again.fold_k == r.fold_k);

  CVPlan other = plan;
  other.seed = 6;
  auto moved = crossvalidate(d, cfg, other);
  REQUIRE(moved.fold_accuracy.size() == 4);  // may or may not equal r's
}

TEST_CASE("leave one out on a linearly separable toy") {
  LabeledDataset d;
  d.points = {{0, 0}, {0.2, 0}, {5, 5}, {5.2, 5}};
  d.labels = {-1, -1, +1, +1};
  CVPlan plan;
  plan.scheme = CVPlan::Scheme::leave_one_out;
  TrainConfig cfg;
  auto r = crossvalidate(d, cfg, plan);
  REQUIRE(r.fold_accuracy.size() == 4);
  CHECK(r.mean_accuracy == doctest::Approx(1.0));
  for (int k : r.fold_k) CHECK(k == 2);
}

TEST_CASE("folds that lose a class are flagged") {
  LabeledDataset d;
  d.points = {{0}, {1}, {2}, {3}, {10}};
  d.labels = {-1, -1, -1, -1, +1};
  CVPlan plan;
  plan.folds = 2;
  auto r = crossvalidate(d, TrainConfig{}, plan);
  CHECK(!r.warnings.empty());
}

TEST_CASE("complexity readout matches known interval structure") {
  TrainConfig cfg;

  auto xr = complexity_index(from_boolean(BooleanFunction::parity(2)), cfg);
  CHECK(xr.k == 3);
  CHECK(xr.pure);
  CHECK(xr.accuracy == doctest::Approx(1.0));
  CHECK(xr.min_gap > 0.0);
  int total = 0;
  for (int c : xr.cluster_sizes) total += c;
  CHECK(total == 4);

  LabeledDataset blobs;
  blobs.points = {{0, 0}, {0.1, 0.2}, {0.2, 0.1}, {4, 4}, {4.1, 4.2}, {4.2, 4.1}};
  blobs.labels = {-1, -1, -1, +1, +1, +1};
  auto br = complexity_index(blobs, cfg);
  CHECK(br.k == 2);
  CHECK(br.pure);

  auto p5 = complexity_index(from_boolean(BooleanFunction::parity(5)), cfg);
  CHECK(p5.k == 6);
  CHECK(p5.pure);
}
