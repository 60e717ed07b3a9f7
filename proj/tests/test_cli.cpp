#include <doctest.h>

#include <json.hpp>
#include <string>
#include <vector>

#include "support.hpp"

using nlohmann::json;

namespace {

json run_json(const std::string& args, int expect_code) {
  std::string out;
  int code = support::run_cli(args, &out);
  CAPTURE(args);
  CAPTURE(out);
  REQUIRE(code == expect_code);
  return json::parse(out);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

}  // namespace

TEST_CASE("usage problems exit with status 2") {
  std::string out;
  CHECK(support::run_cli("", &out) == 2);
  CHECK(support::run_cli("frobnicate", &out) == 2);
  CHECK(support::run_cli("invariants " + support::fixture_path("fix1"), &out) == 2);
  CHECK(support::run_cli("measure " + support::fixture_path("open_trefoil") +
                             " --sigma '(1 2)'",
                         &out) == 2);  // --invariant is required
  CHECK(support::run_cli("enum-involutions", &out) == 2);
}

TEST_CASE("computation problems exit with status 1 and an error object") {
  json j = run_json("validate /no/such/file.json", 1);
  REQUIRE(j.contains("error"));
  CHECK(!j["error"].get<std::string>().empty());

  j = run_json("invariants " + support::fixture_path("fix2") + " --sigma '(1 2'", 1);
  CHECK(j.contains("error"));

  // A sigma of the wrong size is caught by the library.
  j = run_json("invariants " + support::fixture_path("fix2") + " --sigma '(1 2)'", 1);
  CHECK(j.contains("error"));
}

TEST_CASE("validate reports the diagram inventory") {
  json j = run_json("validate " + support::fixture_path("fix1"), 0);
  CHECK(j["ok"] == true);
  CHECK(j["strands"] == 2);
  CHECK(j["classical_count"] == 2);
  CHECK(j["endpoint_count"] == 4);
  CHECK(j["closed"] == false);
  CHECK(j["tau"] == "(1 2)(3 4)");

  j = run_json("validate " + support::fixture_path("vtrefoil_closed"), 0);
  CHECK(j["ok"] == true);
  CHECK(j["closed"] == true);
  CHECK(j["tau"].is_null());
  CHECK(j["virtual_count"] == 1);
}

TEST_CASE("invariants verb emits the full report") {
  json j = run_json("invariants " + support::fixture_path("fix2") +
                        " --sigma '(1 4)(2 3)'",
                    0);
  CHECK(j["sigma"] == "(1 4)(2 3)");
  CHECK(j["component_count"] == 1);
  CHECK(j["writhe"] == 2);
  CHECK(j["jones"] == "A^-4 + A^-6 - A^-10");
  CHECK(j["odd_writhe"]["value"] == 2);
  CHECK(j["affine"].is_object());
  CHECK(j["height_bound"].is_number());
  CHECK(j["genus_bound"].is_number());
}

TEST_CASE("enum-involutions lists H_n in order") {
  std::string out;
  REQUIRE(support::run_cli("enum-involutions 2", &out) == 0);
  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "(1 2)(3 4)");
  CHECK(lines[1] == "(1 3)(2 4)");
  CHECK(lines[2] == "(1 4)(2 3)");
}

TEST_CASE("closure verb reports reduction results") {
  json j = run_json("closure " + support::fixture_path("fix1") +
                        " --sigma '(1 4)(2 3)'",
                    0);
  CHECK(j["sigma"] == "(1 4)(2 3)");
  CHECK(j["component_count"] == 1);
  CHECK(j["reduced_virtual_count"] == 1);
  CHECK(j["is_link_type"] == false);
  CHECK(j["canonical_code"] == "O1+O2+U1+U2+|");
  CHECK(j["diagram"].is_object());

  j = run_json("closure " + support::fixture_path("fix1") + " --sigma '(1 2)(3 4)'", 0);
  CHECK(j["is_link_type"] == true);
  CHECK(j["canonical_code"] == "O1+U2+|O2+U1+|");
}

TEST_CASE("spectrum verb emits one entry per class") {
  json j = run_json("spectrum " + support::fixture_path("fix1") +
                        " --invariant jones",
                    0);
  CHECK(j["n"] == 2);
  CHECK(j["mode"] == "deduped");
  REQUIRE(j["entries"].size() == 3);
  for (const auto& e : j["entries"]) {
    CHECK(e.contains("class"));
    CHECK(e.contains("fingerprint"));
    CHECK(e.contains("jones"));
  }
  CHECK(j["selector"]["name"] == "jones");
  CHECK(j["selector"]["values"].size() == 3);
  CHECK(j["selector"]["avg"].is_string());
  CHECK(!j["selector"].contains("min"));

  std::string out;
  REQUIRE(support::run_cli("spectrum " + support::fixture_path("fix1") + " --csv",
                           &out) == 0);
  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].rfind("sigma,class_size,", 0) == 0);
}

TEST_CASE("measure verb is reproducible byte for byte") {
  std::string cmd = "measure " + support::fixture_path("open_trefoil") +
                    " --sigma '(1 2)' --invariant jones --samples 150 --seed 7";
  std::string a, b, c;
  REQUIRE(support::run_cli(cmd, &a) == 0);
  REQUIRE(support::run_cli(cmd, &b) == 0);
  REQUIRE(support::run_cli(cmd + " --threads 4", &c) == 0);
  CHECK(a == b);
  CHECK(a == c);

  json j = json::parse(a);
  CHECK(j["selector"] == "jones");
  CHECK(j["samples"] == 150);
  CHECK(j["seed"] == 7);
  CHECK(j["scalar"] == false);
  CHECK(j["mean"].is_object());
  CHECK(j["sem"].is_object());
  CHECK(!j.contains("samples_dump"));

  json d = run_json(cmd + " --dump-samples", 0);
  CHECK(d["samples_dump"].size() == 150);
}

TEST_CASE("the crossing limit applies from flag and environment") {
  std::string cmd =
      "invariants " + support::fixture_path("fix6") + " --sigma '(1 3)(2 4)'";
  std::string out;
  CHECK(support::run_cli(cmd, &out) == 0);

  json j = run_json(cmd + " --max-crossings 3", 1);
  CHECK(j["error"].get<std::string>().find("crossing") != std::string::npos);

  CHECK(support::run_cli(cmd, &out, "LINKOID_MAX_CROSSINGS=3 ") == 1);
  CHECK(json::parse(out).contains("error"));

  // The flag wins over the environment.
  CHECK(support::run_cli(cmd + " --max-crossings 30", &out,
                         "LINKOID_MAX_CROSSINGS=3 ") == 0);
}

TEST_CASE("excise verb recovers sigma from a closed diagram") {
  json j = run_json("excise " + support::fixture_path("vtrefoil_closed"), 0);
  CHECK(j["sigma"] == "(1 2)");
  CHECK(j["diagram"].is_object());

  j = run_json("excise " + support::fixture_path("kishino_closed"), 0);
  CHECK(j["sigma"] == "(1 2)(3 4)");
}

TEST_CASE("weighted-spectrum and spectral-measure verbs run end to end") {
  json j = run_json("weighted-spectrum " + support::fixture_path("open_trefoil") +
                        " --invariant jones --samples 40 --seed 3",
                    0);
  CHECK(j["selector"] == "jones");
  REQUIRE(j["entries"].size() == 1);
  CHECK(j["entries"][0]["sigma"] == "(1 2)");
  CHECK(j["entries"][0]["weight"].get<double>() > 0);
  CHECK(j["entries"][0]["estimate"]["samples"] == 40);
  CHECK(j["w_min"] == j["entries"][0]["weight"]);

  json s = run_json("spectral-measure " + support::fixture_path("open_trefoil") +
                        " --invariant jones --samples 40 --seed 3",
                    0);
  CHECK(s["selector"] == "jones");
  CHECK(s["samples"] == 40);
  // One curve: the spectral measure is the lone closure measure.
  CHECK(s["mean"] == j["entries"][0]["estimate"]["mean"]);

  std::string out;
  REQUIRE(support::run_cli("weighted-spectrum " +
                               support::fixture_path("open_trefoil") +
                               " --invariant jones --samples 20 --csv",
                           &out) == 0);
  std::vector<std::string> lines = lines_of(out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "sigma,weight,key,mean,sem");
}
