#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "json_io.hpp"
#include "helpers.hpp"

using namespace tdcode;
using namespace tdcode::test;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli worked examples") {
  CHECK(run({"confuse", "012012", "011112"}).out == "not-confusable\n");
  CHECK(run({"confuse", "01210210", "01201210"}).out == "confusable\n");
  CHECK(run({"label", "01210210"}).out == "01210:(1,+)(2,+)\n");
  CHECK(run({"root", "01012012"}).out == "012\n");
  CHECK(run({"root", "012012", "-k", "2"}).out == "012012\n");
  CHECK(run({"root", "01211210", "--exact", "-k", "3"}).out == "01210\n");
  CHECK(run({"dup", "01210", "1", "3"}).out == "01211210\n");
  CHECK(run({"irr", "3", "--count"}).out == "12\n");
  CHECK(run({"bounds", "--n", "6"}).out == "n=6 constr1=111 eq1=117 prop4=117\n");
  CHECK(run({"oracle", "0120", "0120", "--max-len", "4"}).out == "confusable 0120\n");
}

TEST_CASE("cli table") {
  const Run r = run({"table", "--n-max", "6"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, line, last;
  std::getline(in, header);
  CHECK(header == "n\tconstr1\tlower\teq1\tprop4\toptimal");
  while (std::getline(in, line)) last = line;
  CHECK(last == "6\t111\t117\t117\t117\t117");
}

TEST_CASE("cli exit codes") {
  CHECK(run({"confuse", "013", "01"}).code == 2);
  CHECK(run({"confuse", "012"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"root", "0120", "-k", "5"}).code == 2);
  CHECK(run({"code", "pair", "--root", "012"}).code == 2);
  CHECK(run({"irr", "40", "--budget-states", "100"}).code == 3);
  CHECK(run({"optimal", "--n", "20", "--budget-states", "1000"}).code == 3);
  CHECK(run({"cone", "012", "--max-len", "30", "--budget-states", "1000"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli alphabets beyond ten symbols") {
  CHECK(run({"-q", "12", "root", "10,11,10,11"}).out == "10,11\n");
  CHECK(run({"-q", "12", "label", "0,1,11"}).out == "0,1,11:(1,+)\n");
}

TEST_CASE("label json round-trips") {
  for (const char* w : {"01210210", "01201210", "0110", "0120120112", "012"}) {
    const Run r = run({"label", w, "--format", "json"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(cli::label_from_json(j) == compute_label(W(w)));
    json without_word = j;
    without_word.erase("word");
    CHECK(cli::label_to_json(cli::label_from_json(j)) == without_word);
  }
  CHECK_THROWS_AS(cli::label_from_json(json::parse(R"({"root":"012","entries":[{"count":1,"sign":"?"}]})")),
                  PreconditionError);
}

TEST_CASE("code json round-trips") {
  const std::vector<std::vector<std::string>> commands = {
      {"code", "irr", "--n", "6", "--format", "json"},
      {"code", "pair", "--root", "0120", "--format", "json"},
      {"code", "one-region", "--root", "012", "--n", "16", "--format", "json"},
      {"code", "recursive", "--root", "01210", "--n", "14", "--format", "json", "--validate"},
  };
  for (const auto& cmd : commands) {
    const Run r = run(cmd);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const Code c = cli::code_from_json(j);
    CHECK(c.size() == j["size"].get<std::size_t>());
    CHECK(cli::code_to_json(c) == j);
  }
  const Code direct = construct_one_region_code(W("012"), 16);
  CHECK(cli::code_from_json(cli::code_to_json(direct)).words == direct.words);
}

TEST_CASE("fixture verification needs fixture files") {
  const auto empty = std::filesystem::temp_directory_path() / "tdcode_empty_fixtures";
  std::filesystem::create_directories(empty);
  const Run r = run({"verify-fixtures", "--dir", empty.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("missing fixture") != std::string::npos);
}
