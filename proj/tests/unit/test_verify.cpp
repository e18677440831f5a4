#include <doctest.h>

#include "soergel/errors.hpp"
#include "soergel/verify.hpp"

using namespace soergel;

TEST_CASE("verification reports are deterministic") {
  Realization r = load_preset("A1-GL2");
  VerifyOptions opt;
  auto a = report_json(run_suite("all", r, opt), false);
  auto b = report_json(run_suite("all", r, opt), false);
  CHECK(a.dump() == b.dump());
  CHECK(a["status"] == "pass");
  CHECK(!a["checks"][0].contains("seconds"));
}

TEST_CASE("failed assumption skips dependent checks with a reason") {
  Field f2{2};
  Realization r = load_preset("A1-adjoint", &f2);
  auto res = run_suite("schubert", r, VerifyOptions{});
  bool saw = false;
  for (auto& c : res) {
    CHECK(c.status != CheckStatus::Fail);
    if (c.status == CheckStatus::Skipped) {
      saw = true;
      CHECK(c.witness["code"] == "AssumptionFailed");
    }
  }
  CHECK(saw);
  CHECK(report_passed(res));
}

TEST_CASE("unknown suite is a usage error") {
  Realization r = load_preset("A1-GL2");
  try {
    run_suite("nope", r, VerifyOptions{});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UsageError);
  }
}
