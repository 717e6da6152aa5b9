#include <doctest.h>

#include "core/juxtapose.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace rjc;

TEST_SUITE("juxtapose") {

TEST_CASE("gram examples") {
  Eigen::MatrixXd x(2, 2);
  x << 1, 0, 0, 1;
  Eigen::MatrixXd expect(2, 2);
  expect << 0.5, 0, 0, 0.5;
  CHECK(build_gram(x).values == expect);

  x << 1, 1, 1, 1;
  CHECK(build_gram(x).values == Eigen::MatrixXd::Ones(2, 2));

  Eigen::MatrixXd y(3, 2);
  y << 1, 2, 3, 4, 5, 6;
  Eigen::MatrixXd r(3, 3);
  r << 2.5, 5.5, 8.5, 5.5, 12.5, 19.5, 8.5, 19.5, 30.5;
  const GramMatrix g = build_gram(y);
  CHECK(g.values == r);
  CHECK(g.values == oracle::gram(y));
  CHECK(g.n_features == 2);
}

TEST_CASE("gram matches the loop oracle, is symmetric and column-permutation invariant") {
  const Eigen::MatrixXd x = testing::random_matrix(9, 37, 3);
  const GramMatrix g = build_gram(x, 3);
  CHECK((g.values - oracle::gram(x)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(g.values == g.values.transpose());
  CHECK((g.values.diagonal().array() >= 0).all());

  Eigen::PermutationMatrix<Eigen::Dynamic> perm(37);
  perm.setIdentity();
  std::mt19937 gen(5);
  std::shuffle(perm.indices().data(), perm.indices().data() + 37, gen);
  const GramMatrix gp = build_gram(Eigen::MatrixXd(x * perm));
  CHECK((gp.values - g.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(build_gram(x, 1).values == g.values);
}

TEST_CASE("juxtaposed N=3 layout") {
  GramMatrix r;
  r.values.resize(3, 3);
  r.values << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  r.n_features = 1;
  Eigen::MatrixXd expect(3, 4);
  expect << 2.5, 2, 3, 1, 2, 3.5, 5, 4, 3, 5, 4, 6;
  const JuxtaposedMatrix j = build_juxtaposed(r);
  CHECK(j.values == expect);
  CHECK(j.n_items() == 3);
  CHECK(j.self_column() == 3);
}

TEST_CASE("juxtaposed N=2 and N<2") {
  GramMatrix r;
  r.values.resize(2, 2);
  r.values << 1.5, -0.25, -0.25, 7.0;
  Eigen::MatrixXd expect(2, 3);
  expect << -0.25, -0.25, 1.5, -0.25, -0.25, 7.0;
  CHECK(build_juxtaposed(r).values == expect);

  GramMatrix one;
  one.values = Eigen::MatrixXd::Ones(1, 1);
  CHECK(testing::error_kind([&] { build_juxtaposed(one); }) == ErrorKind::Dimension);
}

TEST_CASE("juxtaposed invariants on random data") {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Eigen::MatrixXd x = testing::random_matrix(4 + seed, 11, seed);
    const GramMatrix g = build_gram(x);
    const JuxtaposedMatrix j = build_juxtaposed(g);
    const auto n = j.n_items();
    CHECK(j.values == oracle::juxtapose(g.values));
    for (Eigen::Index k = 0; k < n; ++k) {
      CHECK(j.values(k, n) == g.values(k, k));
      CHECK(std::abs(j.values(k, n) - x.row(k).squaredNorm() / 11.0) < 1e-12);
      double off = 0.0;
      for (Eigen::Index l = 0; l < n; ++l) {
        if (l == k) continue;
        CHECK(j.values(k, l) == g.values(k, l));
        off += j.values(k, l);
      }
      CHECK(std::abs(j.values(k, k) - off / static_cast<double>(n - 1)) < 1e-12);
    }
  }
}

TEST_CASE("csv export uses 17 significant digits") {
  const auto dir = testing::scratch("juxtapose_csv");
  Eigen::MatrixXd m(1, 2);
  m << 1.0 / 3.0, -2.0;
  write_csv(m, (dir / "m.csv").string());
  const FeatureMatrix back =
      parse_matrix(read_text_file((dir / "m.csv").string()) + "0,0\n", Orientation::ItemsInRows);
  CHECK(back.values(0, 0) == 1.0 / 3.0);
  CHECK(back.values(0, 1) == -2.0);
}

}  // TEST_SUITE
