#include <sstream>

#include "crtype/cli.hpp"
#include "helpers.hpp"

using Json = nlohmann::ordered_json;

namespace {

const std::string jobs = CRTYPE_SOURCE_DIR "/jobs/";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = crtype::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  Run r = run(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

// Witness iff finite, certificate iff infinite, at every nesting level.
void check_report_shape(const Json& j) {
  if (j.is_object()) {
    if (j.contains("verdict")) {
      const std::string v = j.at("verdict");
      CHECK(j.contains("witness") == (v == "finite"));
      CHECK(j.contains("certificate") == (v == "infinite-definitive"));
      if (v == "at-least") CHECK(j.contains("bound"));
    }
    for (const auto& [k, v] : j.items()) check_report_shape(v);
  } else if (j.is_array()) {
    for (const auto& v : j) check_report_shape(v);
  }
}

}  // namespace

TEST_CASE("documented invocations") {
  Json t = run_json({"ttype", "--job", jobs + "levi4_commutator6.json"});
  CHECK(t["verdict"] == "finite");
  CHECK(t["value"] == 6);
  CHECK(t["witness"] == Json::array({"Lbar", "Lbar", "L", "L", "L", "Lbar"}));

  Json c = run_json({"ctype", "--job", jobs + "bloom.json"});
  CHECK(c["verdict"] == "infinite-definitive");
  CHECK(c["certificate"]["statement"] == "L(λ(L,L))≡0, Lbar(λ(L,L))≡0");
  CHECK(c["certificate"]["verified"] == true);

  Run n = run({"nu", "--rho-less", "--system", jobs + "heisenberg.json", "--f", "s", "--cutoff", "6"});
  CHECK(n.code == 0);
  CHECK(n.out.find("= 2") != std::string::npos);
  Json nj = run_json({"nu", "--rho-less", "--system", jobs + "heisenberg.json", "--f", "s", "--cutoff", "6"});
  CHECK(nj["verdict"] == "finite");
  CHECK(nj["value"] == 2);
}

TEST_CASE("inline inputs") {
  Json j = run_json({"ttype", "--vars", "z1,w", "--rho", "-(w + conj(w)) + |z1|^2", "--field",
                     "L: z1=1, w=conj(z1)"});
  CHECK(j["value"] == 2);
  CHECK(j["witness"] == Json::array({"L", "Lbar"}));

  Json c = run_json({"contact", "--vars", "z1,w", "--rho", "-(w + conj(w)) + |z1|^4", "--curve", "z1=xi",
                     "--params", "xi"});
  CHECK(c["verdict"] == "finite");
  CHECK(c["value"] == 4);
  CHECK(c["witness"] == Json::array({"xi^2*conj(xi)^2"}));

  Json h = run_json({"hormander", "--real-vars", "x,y,s", "--field", "X: x=1", "--field", "Y: y=1, s=x^2", "--mode",
                     "real"});
  CHECK(h["numbers"] == Json::array({3}));
}

TEST_CASE("input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"ttype"}).code == 2);
  CHECK(run({"ttype", "--job", "/nonexistent.json"}).code == 2);
  CHECK(run({"ttype", "--job", jobs + "bloom.json", "--format", "yaml"}).code == 2);
  CHECK(run({"ttype", "--job", jobs + "bloom.json", "--system", jobs + "heisenberg.json"}).code == 2);
  CHECK(run({"nu", "--system", jobs + "heisenberg.json", "--f", "z9"}).code == 2);
  CHECK(run({"ctype", "--job", jobs + "bloom.json", "--section", "M"}).code == 2);
  Run bad = run({"ttype", "--vars", "z1,w", "--rho", "-(w + conj(w)) + |z1|^2 +", "--field", "L: z1=1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("column") != std::string::npos);
}

TEST_CASE("reports are deterministic and round-trip") {
  for (const char* name : {"bloom.json", "levi4_commutator_infinite.json", "levi4_commutator6.json", "heisenberg.json",
                           "martinet.json", "engel.json"}) {
    INFO(name);
    Run a = run({"report", "--job", jobs + name, "--format", "json", "--seed", "7"});
    Run b = run({"report", "--job", jobs + name, "--format", "json", "--seed", "7"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["schema"] == crtype::cli::report_schema);
    CHECK(Json::parse(j.dump()) == j);
    check_report_shape(j);
    Run text = run({"report", "--job", jobs + name});
    CHECK(text.code == 0);
    CHECK(text.out.rfind("# crtype-report/1", 0) == 0);
  }
}

TEST_CASE("job reports reproduce the example types") {
  Json inf = run_json({"report", "--job", jobs + "levi4_commutator_infinite.json"});
  const std::string s = inf.dump();
  CHECK(s.find("\"symbol\":\"t_L(M,p)\",\"verdict\":\"infinite-definitive\"") != std::string::npos);
  Json six = run_json({"ttype", "--job", jobs + "levi4_commutator6.json", "--cutoff", "5"});
  CHECK(six["verdict"] == "at-least");
  CHECK(six["bound"] == 6);
  Json engel = run_json({"hormander", "--system", jobs + "engel.json"});
  CHECK(engel["numbers"] == Json::array({2, 3}));
}
