#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "bc/datum.hpp"
#include "bc/thermo.hpp"

using namespace bc;

namespace {

struct ToolRun {
  int exit_code;
  std::string text;
};

ToolRun run_tool(const std::string& args) {
  const char* bin = std::getenv("BCTOOL_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = "'" + std::string(bin) + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::string write_fixture(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream ss(text);
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// header-keyed view of one CSV data row
std::map<std::string, std::string> row_map(const std::string& header, const std::string& line) {
  const auto keys = cells_of(header);
  const auto vals = cells_of(line);
  REQUIRE(keys.size() == vals.size());
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < keys.size(); ++i) out[keys[i]] = vals[i];
  return out;
}

std::string fmt_complex(const std::complex<double>& z) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

}  // namespace

TEST_CASE("verify passes on the default datum") {
  const auto r = run_tool("verify --trunc 12,4");
  CHECK(r.exit_code == 0);
  CHECK(r.text.find("VERIFY PASS") != std::string::npos);
  CHECK(r.text.find("operator relations") != std::string::npos);
  CHECK(r.text.find("failures=0") != std::string::npos);
}

TEST_CASE("verify accepts a lattice datum file") {
  const auto path = write_fixture("bc_cli_weil.json", R"({"kind": "weil", "q": 4})");
  const auto r = run_tool("verify --datum " + path + " --trunc 8,4");
  CHECK(r.exit_code == 0);
  CHECK(r.text.find("VERIFY PASS") != std::string::npos);
}

TEST_CASE("malformed configuration exits 2 with the schema path") {
  SUBCASE("broken syntax") {
    const auto path = write_fixture("bc_cli_bad1.json", "{kind: weil");
    const auto r = run_tool("verify --datum " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.text.find("$: malformed JSON") != std::string::npos);
  }
  SUBCASE("unknown key") {
    const auto path = write_fixture("bc_cli_bad2.json", R"({"kind": "weil", "qq": 4})");
    const auto r = run_tool("verify --datum " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.text.find("$.qq: unknown key") != std::string::npos);
  }
  SUBCASE("unknown kind name") {
    const auto path = write_fixture("bc_cli_bad3.json", R"({"kind": "weyl"})");
    const auto r = run_tool("verify --datum " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.text.find("$.kind:") != std::string::npos);
  }
  SUBCASE("generators on the wrong kind") {
    const auto path =
        write_fixture("bc_cli_bad4.json", R"({"kind": "weil", "q": 4, "generators": ["2"]})");
    const auto r = run_tool("verify --datum " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.text.find("$.generators:") != std::string::npos);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_tool("verify --bogus").exit_code == 2);
  CHECK(run_tool("verify --trunc 4").exit_code == 2);
  CHECK(run_tool("partition --beta 2,apple").exit_code == 2);
  CHECK(run_tool("").exit_code == 2);
  CHECK(run_tool("partition --format yaml").exit_code == 2);
}

TEST_CASE("an injected fault is caught with a witness") {
  const auto r = run_tool("verify --trunc 8,4 --inject-fault");
  CHECK(r.exit_code == 1);
  CHECK(r.text.find("VERIFY FAIL") != std::string::npos);
  CHECK(r.text.find("witness:") != std::string::npos);
  CHECK(r.text.find("sign-flipped") != std::string::npos);
}

TEST_CASE("partition rows sort by beta and divergent rows are not fatal") {
  const auto r = run_tool("partition --beta 2,0.5,3 --trunc 100000,0");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.text);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "case,s,beta,closed_value,trace_value,deviation,tail_bound,status");
  const auto row0 = row_map(lines[0], lines[1]);
  const auto row1 = row_map(lines[0], lines[2]);
  const auto row2 = row_map(lines[0], lines[3]);
  CHECK(row0.at("beta") == "0.5");
  CHECK(row0.at("status") == "divergent");
  CHECK(row0.at("closed_value").empty());
  CHECK(row1.at("beta") == "2");
  CHECK(row1.at("status") == "ok");
  CHECK(row2.at("beta") == "3");
  CHECK(row2.at("status") == "ok");
  const double dev = std::stod(row1.at("deviation"));
  const double tail = std::stod(row1.at("tail_bound"));
  CHECK(dev <= 1e-6 + tail);
}

TEST_CASE("gibbs gamma column matches an in-process recomputation") {
  const auto r = run_tool("gibbs --beta 2 --samples 3 --gamma 5 --trunc 50000,0");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.text);
  REQUIRE(lines.size() >= 2);

  const Datum d = make_datum(Kind::QmodZ);
  const GHom g{};
  bool seen = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = row_map(lines[0], lines[i]);
    if (row.at("s") != "2/3") continue;
    seen = true;
    // unit 5 acts at level 3 as the residue 2
    const GroupElem moved = galois_apply(d, GaloisElem{3, 2, +1}, QmodZElem{Rat(2, 3)});
    const auto closed = gibbs_closed(d, g, moved, 2.0, 1e-7);
    CHECK(row.at("gamma_5") == fmt_complex(closed.value));
    CHECK(row.at("gamma_5") != row.at("closed_value"));
  }
  CHECK(seen);
}

TEST_CASE("identical invocations are byte-identical") {
  const std::string args = "gibbs --beta 2 --samples 4 --gamma 5,13 --trunc 50000,0";
  const auto a = run_tool(args);
  const auto b = run_tool(args);
  CHECK(a.exit_code == 0);
  CHECK(a.text == b.text);
}

TEST_CASE("json output parses and carries the same fields") {
  const auto r = run_tool("partition --beta 2 --trunc 50000,0 --format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.text, nullptr, false);
  REQUIRE(!doc.is_discarded());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].at("status") == "ok");
  CHECK(doc[0].at("beta") == "2");
  CHECK(!doc[0].at("closed_value").get<std::string>().empty());
}

TEST_CASE("spectrum rows keep the cell grid intact") {
  const auto path = write_fixture("bc_cli_algnum.json",
                                  R"({"kind": "algnum_model", "generators": ["2", "3"]})");
  const auto r = run_tool("spectrum --datum " + path + " --limit 6 --beta 2 --trunc 6,2");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.text);
  REQUIRE(lines.size() == 7);
  for (const auto& line : lines) {
    CHECK(cells_of(line).size() == 4);  // lattice indices must not leak separators
  }
  CHECK(lines[1].find("e[1") != std::string::npos);
}

TEST_CASE("the lattice cut in --trunc keeps a prefix of the generators") {
  const auto path = write_fixture("bc_cli_algnum3.json",
                                  R"({"kind": "algnum_model", "generators": ["2", "3", "5"]})");
  const auto full = run_tool("spectrum --datum " + path + " --limit 400 --beta 2 --trunc 4,1");
  const auto cut = run_tool("spectrum --datum " + path + " --limit 400 --beta 2 --trunc 4,1,1");
  CHECK(full.exit_code == 0);
  CHECK(cut.exit_code == 0);
  // rank 3 window 4*2^3 columns, rank 1 window 4*2, plus the header
  CHECK(lines_of(full.text).size() == 33);
  CHECK(lines_of(cut.text).size() == 9);
}
