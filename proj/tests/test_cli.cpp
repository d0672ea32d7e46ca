#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "latdisc/cli.hpp"
#include "latdisc/corpus.hpp"
#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"

using namespace latdisc;
using latdisc::cli::AlphaSpec;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("alpha specs round-trip") {
  for (const std::string s : {"13/30", "0/1", "-3/7", "surd:-1,5,2", "surd:0,3,1", "rule:euler_e", "rule:tan_one",
                              "rule:constant(3)", "bits:9e3779b97f4a7c15@64", "bits:1@256"}) {
    const AlphaSpec a = AlphaSpec::parse(s);
    CHECK(a.str() == s);
    CHECK(AlphaSpec::parse(a.str()) == a);
  }
  CHECK(AlphaSpec::parse("2/4").str() == "1/2");
  CHECK(AlphaSpec::parse("5").str() == "5/1");
  CHECK(AlphaSpec::parse("6/-4").str() == "-3/2");
  for (const auto& c : corpus_alphas(CorpusSize::Full)) {
    const AlphaSpec a = AlphaSpec::parse(c.label);
    CHECK(a.str() == c.label);
    CHECK(a.to_alpha().x_step() == c.alpha.x_step());
    CHECK(a.to_alpha().x_scale() == c.alpha.x_scale());
  }
  for (const std::string bad : {"", "1/0", "x/3", "surd:1,4,1", "surd:1,5", "rule:nope", "bits:zz@64", "bits:1@8",
                                "bits:10000000000000000@64", "bits:ff"})
    CHECK_THROWS_AS(AlphaSpec::parse(bad), ValidationError);
}

TEST_CASE("documented invocations") {
  auto r = call({"cf", "--alpha", "13/30"});
  CHECK(r.code == 0);
  CHECK(r.out == "[0;2,3,4]\n");

  r = call({"disc", "--alpha", "surd:0,5,2", "--N", "89", "--sym", "--algo", "fast"});
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "N,d2sq_num,d2sq_den,d2_float");
  const auto v = d2_exact_fast(build_S(AlphaSpec::parse("surd:0,5,2").to_alpha(), 89)).d2_squared;
  CHECK(ls[1].rfind("89," + v.get_num().get_str() + "," + v.get_den().get_str() + ",", 0) == 0);
  auto q = call({"disc", "--alpha", "surd:0,5,2", "--N", "89", "--sym", "--algo", "quad"});
  CHECK(q.out == r.out);

  r = call({"check-bounds", "--corpus", "small"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
}

TEST_CASE("json mirrors csv") {
  auto c = call({"disc", "--alpha", "3/8", "--N", "8"});
  auto j = call({"--out", "json", "disc", "--alpha", "3/8", "--N", "8"});
  auto doc = nlohmann::json::parse(j.out);
  const auto row = lines(c.out)[1];
  CHECK(row.rfind("8," + doc["d2sq"].get<std::string>().replace(doc["d2sq"].get<std::string>().find('/'), 1, ","), 0) == 0);
  // global flags are also accepted after the subcommand
  CHECK(call({"disc", "--alpha", "3/8", "--N", "8", "--out", "json"}).out == j.out);

  auto e = call({"--out", "json", "estimate", "--alpha", "surd:-1,5,2", "--N", "100", "--unsym"});
  CHECK(e.code == 0);
  auto ed = nlohmann::json::parse(e.out);
  CHECK(ed["lo"].get<double>() <= ed["hi"].get<double>());
  CHECK(ed["q_K"] == "144");
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == cli::kUsage);
  CHECK(call({"cf", "--alpha", "1/2", "--nope"}).code == cli::kUsage);
  CHECK(call({"frobnicate"}).code == cli::kUsage);
  CHECK(call({"disc", "--alpha", "1/2"}).code == cli::kUsage);
  CHECK(call({"disc", "--alpha", "1/2", "--N", "4", "--float", "--exact"}).code == cli::kUsage);
  auto bad = call({"cf", "--alpha", "surd:1,9,1"});
  CHECK(bad.code == cli::kUsage);
  CHECK(!bad.err.empty());
  CHECK(call({"estimate", "--alpha", "bits:9e3779b97f4a7c15@64", "--N", "100000000000"}).code == cli::kPrecision);
  CHECK(call({"--help"}).code == cli::kOk);
}

TEST_CASE("thread count does not change output") {
  const std::vector<std::string> rat = {"sweep-rational", "--Q", "40", "--mode", "full"};
  auto one = call([&] { auto a = rat; a.insert(a.end(), {"--threads", "1"}); return a; }());
  auto four = call([&] { auto a = rat; a.insert(a.end(), {"--threads", "4"}); return a; }());
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(one.err == four.err);
  CHECK(lines(one.out)[0] == "id,q_or_seed,stat,estimator,enclosure_width");
  auto summary = nlohmann::json::parse(one.err);
  CHECK(summary["n"] == lines(one.out).size() - 1);

  const std::vector<std::string> irr = {"--seed", "9", "sweep-irrational", "--N", "5000", "--M", "12", "--estimator",
                                        "prop1_mid"};
  auto a = call([&] { auto v = irr; v.insert(v.end(), {"--threads", "1"}); return v; }());
  auto b = call([&] { auto v = irr; v.insert(v.end(), {"--threads", "3"}); return v; }());
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 13);
}
