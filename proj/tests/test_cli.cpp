#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>

#include "qac/cli.hpp"
#include "qac/error.hpp"

using namespace qac;
using namespace qac::cli;

namespace {

Json parse(const CommandResult& r) { return Json::parse(r.output); }

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("CycNum and matrix JSON") {
  const CycNum c = CycNum::from_rational(4, Rational(3)) - CycNum::root(4, 1) * Rational(1, 2);
  const Json j = to_json(c);
  CHECK(j["conductor"] == 4);
  CHECK(j["coeffs"] == Json::array({"3/1", "-1/2"}));
  const Json m = to_json(Matrix::identity(2, 4));
  CHECK(m["dim"] == 2);
  CHECK(m["rows"][1][1]["coeffs"][0] == "1/1");
  CHECK(to_json(ProjPoint::basis(2, 1, 4))["label"] == "∞");
}

TEST_CASE("verify-0011") {
  const auto r = verify_0011({});
  CHECK(r.status == 0);
  const Json j = parse(r);
  CHECK(j["pair"] == Json::array({2, 12}));
  CHECK(j["unique"] == true);
  CHECK(j["orbit_size"] == 12);
  CHECK(j["brute_force_unique"] == true);
  CHECK(j["labels_match_figure"] == true);
  CHECK(j["recipe"]["matches_printed"] == true);
  CHECK(j["search_space_exhausted"] == false);
  std::set<std::string> labels;
  for (const auto& l : j["orbit_labels"]) labels.insert(l.get<std::string>());
  CHECK(labels == std::set<std::string>(figure_labels().begin(), figure_labels().end()));
  CHECK(j["matrices"]["delta0"]["text"] == printed_u0().to_string());

  VerifyOptions capped;
  capped.orbit_cap = 4;
  const auto rc = verify_0011(capped);
  CHECK(rc.status == 0);
  CHECK(parse(rc)["check"]["method"] == "brute_force");
  CHECK(parse(rc)["unique"] == true);

  // Another vector: the answer comes from the checks themselves.
  VerifyOptions other;
  other.v = RationalVector2{Rational(1), Rational(0)};
  const auto ro = verify_0011(other);
  CHECK(ro.status == 0);
  const auto m10 = conjugate_witness(tetrahedral_a(), tetrahedral_b(), "0011", *other.v);
  CHECK(parse(ro)["unique"] == brute_force_check(m10, "0011"));

  // v = (1, 2) gives a unique witness too, with a different orbit.
  other.v = RationalVector2{Rational(1), Rational(2)};
  const Json r12 = parse(verify_0011(other));
  CHECK(r12["unique"] == true);
  CHECK(r12["pair"] == Json::array({2, 12}));

  other.v = RationalVector2{Rational(0), Rational(0)};
  CHECK(verify_0011(other).status != 0);

  VerifyOptions text;
  text.format = OutputFormat::text;
  const auto rt = verify_0011(text);
  CHECK(rt.output.find("unique: true") != std::string::npos);
}

TEST_CASE("aperm command") {
  ApermCommand a;
  a.word = "0011";
  Json j = parse(cli::aperm(a));
  CHECK(j["aperm"] == 5);
  CHECK(j["witness"]["verified"] == true);
  a.word = "0";
  CHECK(parse(cli::aperm(a))["aperm"] == 2);
  a.word = "010101";
  CHECK(parse(cli::aperm(a))["aperm"] == 7);
  a.word = "0011";
  a.q_max = 4;
  j = parse(cli::aperm(a));
  CHECK(j["aperm"].is_null());
  CHECK(j["result"] == "none <= 4");
  a.word = "";
  CHECK_THROWS_AS(cli::aperm(a), Error);
  a.word = "0101010101";
  CHECK_THROWS_AS(cli::aperm(a), Error);

  // A tiny budget leaves a frontier that resumes to the same answer.
  ApermCommand b;
  b.word = "001011";
  b.budget_seconds = 0.0;
  const Json partial = parse(cli::aperm(b));
  CHECK(partial["completed"] == false);
  ApermCommand c;
  c.word = "001011";
  c.resume = {partial["frontier"]["q"].get<std::uint32_t>(), partial["frontier"]["type_index"].get<std::uint32_t>()};
  CHECK(parse(cli::aperm(c))["aperm"] == 7);
}

TEST_CASE("search command") {
  SearchCommand s;
  s.word = "0011";
  const auto r = cli::search(s);
  CHECK(r.status == 0);
  const Json j = parse(r);
  CHECK(j["result"] == "witness");
  CHECK(j["witness"]["pair"] == Json::array({2, 12}));
  CHECK(j["witness"]["group"] == "binary_tetrahedral");
  CHECK(j["witness"]["unique"] == true);

  // Output does not depend on the worker count.
  s.workers = 4;
  CHECK(cli::search(s).output == r.output);

  SearchCommand c;
  c.word = "0^3 1^3";
  c.order_max = 12;
  c.families = {"polyhedral"};
  const Json none = parse(cli::search(c));
  CHECK(none["result"] == "none found");
  CHECK(none["search_space_exhausted"] == true);
  CHECK(none["groups"].size() == 1);

  c.families = {"sporadic"};
  CHECK_THROWS_AS(cli::search(c), Error);
}

TEST_CASE("collide command") {
  CollideCommand c;
  c.group = "2T";
  c.projective = true;
  Json j = parse(cli::collide(c));
  CHECK(j["commuting_exponent"] == 3);
  CHECK(j["collision"] == true);
  c.m = 2;
  CHECK(parse(cli::collide(c))["collision"] == false);
  CollideCommand seven;
  seven.group = "cyclic:7";
  CHECK(parse(cli::collide(seven))["commuting_exponent"] == 1);
  seven.group = "monster";
  CHECK_THROWS_AS(cli::collide(seven), Error);
}

TEST_CASE("export command") {
  ExportCommand w;
  w.target = "witness";
  const auto dot = export_dot(w).output;
  CHECK(count(dot, "[label=") == 12);
  CHECK(count(dot, "style=dashed") == 12);
  CHECK(dot.find("label=\"∞\"") != std::string::npos);
  CHECK(export_dot(w).output == dot);

  ExportCommand g;
  g.target = "2T";
  g.projective = true;
  const auto cay = export_dot(g).output;
  CHECK(count(cay, "[label=") == 12);
  CHECK(cay.find("label=\"1\"") != std::string::npos);
  CHECK(cay.find("label=\"a\"") != std::string::npos);

  ExportCommand t;
  t.target = "cyclic:1";
  CHECK(count(export_dot(t).output, "[label=") == 1);
}

TEST_CASE("float-check and group commands") {
  FloatCheckCommand f;
  f.words = {"01", "0011"};
  const auto r = float_check(f);
  CHECK(r.status == 0);
  CHECK(parse(r)["results"][1]["fraction"] == 1.0);
  CHECK(float_check(f).output == r.output);
  f.force_equal = true;
  CHECK(parse(float_check(f))["results"][0]["successes"] == 0);
  f.tol = "-1";
  CHECK_THROWS_AS(float_check(f), Error);

  GroupCommand g;
  g.group = "2I";
  g.projective = true;
  const Json j = parse(group_summary(g));
  CHECK(j["order"] == 60);
  CHECK(j["commuting_exponent"] == 30);
  CHECK(j["conductor"] == 20);
}

TEST_CASE("flag parsing helpers") {
  CHECK(parse_vector("1,2") == RationalVector2{1, 2});
  CHECK(parse_vector("1/2,-3") == RationalVector2{Rational(1, 2), -3});
  CHECK_THROWS_AS(parse_vector("1"), Error);
  CHECK_THROWS_AS(parse_vector("1,2,3"), Error);
  CHECK(parse_tolerance("1e-8") == doctest::Approx(1e-8));
  CHECK_THROWS_AS(parse_tolerance("0"), Error);
  CHECK_THROWS_AS(parse_tolerance("abc"), Error);
  CHECK_THROWS_AS(parse_tolerance("1e-8x"), Error);

  ::setenv("QAC_WORKERS", "3", 1);
  CHECK(resolve_workers(1) == 3);
  ::setenv("QAC_WORKERS", "zero", 1);
  CHECK(resolve_workers(2) == 2);
  ::unsetenv("QAC_WORKERS");
  CHECK(resolve_workers(0) == 1);
}
