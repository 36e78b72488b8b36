#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = multiquad::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: count") {
  const Outcome o = call({"count", "--k", "2", "--x", "256"});
  CHECK(o.status == 0);
  CHECK(o.out == "k,x,totally_real,radical_bound,sum_11,sum_31,sum_21,sum_23,value,oracle\n"
                 "2,256,false,16,1,1,0,1,3,\n");
  const Outcome tr = call({"count", "--k", "2", "--x", "1600", "--totally-real", "--oracle"});
  CHECK(tr.out.find("2,1600,true,40,0,0,1,0,1,1\n") != std::string::npos);
}

TEST_CASE("cli: normalize, formula, disc") {
  CHECK(call({"normalize", "--presentation", "6,10"}).out ==
        "input,normal,key,input_is_normal\n\"6,10\",\"10,15\",\"6,10,15\",false\n");
  const Outcome f = call({"formula", "--k", "2", "--kind", "Q"});
  CHECK(f.out.find(",Q,2·(3)^(ω−1) − 1·(1)^(ω−1),") != std::string::npos);
  const Outcome d = call({"--format", "json", "disc", "--key=-3,-1,3"});
  const auto j = nlohmann::json::parse(d.out);
  CHECK(j["rows"][0]["discriminant"] == "144");
  CHECK(j["rows"][0]["class"] == "(3,1)");
  CHECK(j["rows"][0]["mod4_presentation"] == "-1,-3");
}

TEST_CASE("cli: radical rows") {
  const Outcome o = call({"radical", "--k", "2", "--P", "15", "--filter", "totally-real"});
  CHECK(o.status == 0);
  CHECK(o.out == "k,P,key,class,discriminant\n2,15,\"3,5,15\",\"(3,1)\",3600\n");
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(call({}).status == 2);
  CHECK(call({"count", "--k", "2"}).status == 2);
  CHECK(call({"count", "--k", "2", "--x", "abc"}).status == 2);
  CHECK(call({"--format", "xml", "count", "--k", "2", "--x", "5"}).status == 2);
  CHECK(call({"verify", "--suite", "nothing"}).status == 2);
  CHECK(call({"disc", "--presentation", "2,3", "--key=2,3,6"}).status == 2);
  CHECK(call({"frobnicate"}).status == 2);
}

TEST_CASE("cli: computational errors exit 1 with a code") {
  const Outcome o = call({"normalize", "--presentation", "-1,3"});
  CHECK(o.status == 1);
  CHECK(o.err.find("error: not_i_free:") == 0);
  const Outcome j = call({"--format", "json", "count", "--k", "2", "--x", "1e40"});
  CHECK(j.status == 1);
  CHECK(nlohmann::json::parse(j.out)["error"]["code"] == "bound_exceeded");
  CHECK(call({"fit", "--k", "2", "--grid", "1000,100000"}).err.find("ill_conditioned_grid") != std::string::npos);
}

TEST_CASE("cli: thread count never changes the bytes") {
  const std::vector<std::string> base{"count", "--k", "2", "--x", "1e12"};
  auto with_threads = [&](const char* n) {
    std::vector<std::string> a{"--threads", n};
    a.insert(a.end(), base.begin(), base.end());
    return call(a).out;
  };
  CHECK(with_threads("1") == with_threads("3"));
  const Outcome v1 = call({"--threads", "1", "verify", "--suite", "formulas", "--seed", "4"});
  const Outcome v4 = call({"--threads", "4", "verify", "--suite", "formulas", "--seed", "4"});
  CHECK(v1.status == 0);
  CHECK(v1.out == v4.out);
}

TEST_CASE("cli: --out writes the report to a file") {
  const std::string path = "cli_out_test.csv";
  const Outcome o = call({"--out", path, "normalize", "--presentation", "2,5"});
  CHECK(o.status == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str() == "input,normal,key,input_is_normal\n\"2,5\",\"2,5\",\"2,5,10\",true\n");
  std::remove(path.c_str());
}

TEST_CASE("cli: timing goes to stderr for CSV") {
  const Outcome o = call({"--timing", "normalize", "--presentation", "2,5"});
  CHECK(o.err.find("wall_time_s=") == 0);
  CHECK(o.out == call({"normalize", "--presentation", "2,5"}).out);
}
