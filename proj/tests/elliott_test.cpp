#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdiag/elliott.hpp"
#include "helpers.hpp"

using namespace cdiag;
using testutil::af_tower;

TEST_CASE("identical presentations give an identity certificate") {
  const Diagram a = af_tower({1, 2, 4, 8, 16, 32, 64});
  const IntertwiningResult res = build_intertwining(a, a, std::nullopt, 3, 6);
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(res));
  const auto& cert = std::get<IntertwiningCertificate>(res);
  CHECK(cert.depth() == 3);
  for (const BlockMatrix& u : cert.unitariesA) CHECK(u == BlockMatrix::identity(u.shape()));
  for (const BlockMatrix& u : cert.unitariesB) CHECK(u == BlockMatrix::identity(u.shape()));
  const CertificateReport rep = verify_certificate(cert, a, a);
  CHECK_MESSAGE(rep.ok, rep.text);
}

TEST_CASE("constant tower pair") {
  const Diagram a = af_tower({2, 2, 2, 2});
  const IntertwiningResult res = build_intertwining(a, a, std::nullopt, 2, 3);
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(res));
  CHECK(verify_certificate(std::get<IntertwiningCertificate>(res), a, a).ok);
}

TEST_CASE("CAR vs its telescope") {
  const Diagram a = materialize(af_tower({1, 2}, true), 8);
  const Diagram b = telescope(a, {0, 2, 4, 6});
  const IntertwiningResult res = build_intertwining(a, b, std::nullopt, 3, 7);
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(res));
  const auto& cert = std::get<IntertwiningCertificate>(res);
  const CertificateReport rep = verify_certificate(cert, a, b);
  CHECK_MESSAGE(rep.ok, rep.text);
  for (std::size_t k = 1; k < cert.stagesA.size(); ++k) {
    CHECK(cert.stagesA[k] > cert.stagesA[k - 1]);
  }
}

TEST_CASE("2^inf vs 3^inf refuted up to the bound") {
  const Diagram a = af_tower({1, 2}, true);
  const Diagram b = af_tower({1, 3}, true);
  const Decision dec = decide_af_pair_isomorphic(a, b, 5, 6);
  CHECK(!dec.isomorphic_witnessed);
  REQUIRE(dec.refutation.has_value());
  REQUIRE(dec.supernaturalA.has_value());
  REQUIRE(dec.supernaturalB.has_value());
  CHECK(dec.supernaturalA->str() == "2^inf");
  CHECK(dec.supernaturalB->str() == "3^inf");
  CHECK(*dec.supernaturalA != *dec.supernaturalB);
  CHECK(dec.text.find("not a proof") != std::string::npos);
}

TEST_CASE("decide accepts the CAR pair") {
  const Diagram a = af_tower({1, 2}, true);
  const Diagram b = telescope(materialize(a, 9), {0, 2, 4, 6, 8});
  const Decision dec = decide_af_pair_isomorphic(a, b, 3, 8);
  CHECK_MESSAGE(dec.isomorphic_witnessed, dec.text);
  REQUIRE(dec.certificate.has_value());
  CHECK(verify_certificate(*dec.certificate, materialize(a, 9), b).ok);
}

TEST_CASE("seeded intertwining") {
  const Diagram a = af_tower({2, 4, 8, 16, 32});
  const Diagram b = af_tower({2, 4, 8, 16, 32});
  const IntertwiningResult res = build_intertwining(a, b, IntMatrix{{1}}, 2, 4);
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(res));
  CHECK(verify_certificate(std::get<IntertwiningCertificate>(res), a, b).ok);
  // a seed that preserves no unit is rejected
  CHECK_THROWS_AS(build_intertwining(a, b, IntMatrix{{7}}, 2, 4), std::invalid_argument);
}

TEST_CASE("interval bases are rejected") {
  Diagram ai;
  ai.levels.push_back({SummandShape{Base::Interval, 1}});
  ai.levels.push_back({SummandShape{Base::Interval, 2}});
  ai.bundles.push_back({0, 0, 0, {PLMap::identity(), PLMap::identity()}});
  const Diagram af = af_tower({1, 2, 4});
  CHECK_THROWS_AS(build_intertwining(ai, af, std::nullopt, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_intertwining(af, af, std::nullopt, 0, 3), std::invalid_argument);
}

TEST_CASE("tampered certificates fail verification") {
  const Diagram a = materialize(af_tower({1, 2}, true), 8);
  const Diagram b = telescope(a, {1, 3, 5});
  IntertwiningResult res = build_intertwining(a, b, std::nullopt, 2, 7);
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(res));
  auto cert = std::get<IntertwiningCertificate>(res);
  REQUIRE(verify_certificate(cert, a, b).ok);
  bool tampered = false;
  for (std::size_t k = 0; k < cert.unitariesA.size(); ++k) {
    const BlockMatrix id = BlockMatrix::identity(cert.unitariesA[k].shape());
    if (cert.unitariesA[k] != id) {
      cert.unitariesA[k] = id;
      tampered = true;
      break;
    }
  }
  if (tampered) {
    const CertificateReport rep = verify_certificate(cert, a, b);
    CHECK(!rep.ok);
    CHECK(!rep.failures.empty());
  }
}

TEST_CASE("telescoping stability of certificate existence") {
  const Diagram a = materialize(af_tower({1, 2}, true), 9);
  const Diagram b = telescope(a, {0, 2, 4, 6, 8});
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(
      build_intertwining(a, b, std::nullopt, 2, 8)));
  const Diagram a_tel = telescope(a, {0, 3, 6});
  REQUIRE(std::holds_alternative<IntertwiningCertificate>(
      build_intertwining(a_tel, b, std::nullopt, 2, 8)));
}

TEST_CASE("certificates serialize deterministically") {
  const Diagram a = af_tower({1, 2, 4, 8, 16});
  const auto get = [&] {
    const IntertwiningResult res = build_intertwining(a, a, std::nullopt, 2, 4);
    REQUIRE(std::holds_alternative<IntertwiningCertificate>(res));
    return serialize_certificate(std::get<IntertwiningCertificate>(res));
  };
  const std::string s1 = get();
  CHECK(s1 == get());
  CHECK(!s1.empty());
}
