#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "prodchain/bytes.hpp"
#include "prodchain/cli.hpp"

using namespace prodchain;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("prodchain_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_text(const std::string& path) {
  const auto b = read_file(path);
  return std::string(b.begin(), b.end());
}

}  // namespace

TEST_CASE("usage errors") {
  auto r = run({});
  CHECK(r.code == 2);
  CHECK(r.err.find("usage: prodchain") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"poa", "rate", "--scheduled", "1"}).code == 2);
  CHECK(run({"poa", "rate", "--scheduled", "1", "--actual", "2", "--bogus"}).code == 2);
  CHECK(run({"chain"}).code == 2);
  CHECK(run({"bench", "table5", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("poa rate") {
  auto r = run({"poa", "rate", "--scheduled", "3", "--actual", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "rating = 3\naccess = allow\n");
  r = run({"poa", "rate", "--scheduled", "0", "--actual", "9"});
  CHECK(r.out == "rating = 0\naccess = severity-concern\n");
  r = run({"poa", "rate", "--scheduled", "0", "--actual", "3", "--threshold", "3"});
  CHECK(r.out == "rating = 5\naccess = allow\n");
  CHECK(run({"poa", "rate", "--scheduled", "-1", "--actual", "3"}).code == 1);
}

TEST_CASE("keygen, signcrypt and unsigncrypt") {
  TempDir dir;
  write_text(dir / "a.doc", "Acme Ltd TL-0042");
  write_text(dir / "b.doc", "Bob NID 7");
  write_text(dir / "c.doc", "Carol NID 8");
  for (auto [who, type, role] : {std::tuple{"a", "trade-license", "manufacturer"}, std::tuple{"b", "national-id", "retailer"},
                                 std::tuple{"c", "national-id", "customer"}}) {
    const auto r = run({"keygen", "--doc", dir / (std::string(who) + ".doc"), "--type", type, "--role", role, "--out",
                        dir / (std::string(who) + ".wallet"), "--key-out", dir / (std::string(who) + ".key")});
    REQUIRE(r.code == 0);
  }
  CHECK(read_text(dir / "a.wallet").find("role = manufacturer") != std::string::npos);
  CHECK(run({"keygen", "--doc", dir / "a.doc", "--type", "passport", "--role", "supplier"}).code == 1);
  CHECK(run({"keygen", "--doc", dir / "missing.doc", "--type", "national-id", "--role", "supplier"}).code == 2);

  write_text(dir / "d.txt", "lot 17: organic cotton");
  auto r = run({"signcrypt", "--key", dir / "a.key", "--to", dir / "b.wallet", dir / "c.wallet", "--data", dir / "d.txt",
                "--product", "P17", "--seed", "3", "--out", dir / "ct.hex"});
  REQUIRE(r.code == 0);
  for (auto who : {"b", "c"}) {
    r = run({"unsigncrypt", "--key", dir / (std::string(who) + ".key"), "--from", dir / "a.wallet", "--to",
             dir / "b.wallet", dir / "c.wallet", "--in", dir / "ct.hex"});
    CHECK(r.code == 0);
    CHECK(r.out == "lot 17: organic cotton");
  }
  r = run({"unsigncrypt", "--key", dir / "c.key", "--from", dir / "b.wallet", "--to", dir / "b.wallet",
           dir / "c.wallet", "--in", dir / "ct.hex"});
  CHECK(r.code == 1);
  r = run({"unsigncrypt", "--key", dir / "a.key", "--from", dir / "a.wallet", "--to", dir / "b.wallet",
           dir / "c.wallet", "--in", dir / "ct.hex"});
  CHECK(r.code == 1);
}

TEST_CASE("chain commands") {
  TempDir dir;
  REQUIRE(run({"chain", "init", "--out", dir / "g.prdc"}).code == 0);
  auto r = run({"chain", "validate", dir / "g.prdc"});
  CHECK(r.code == 0);
  CHECK(r.out == "valid: 2 blocks\n");
  r = run({"chain", "show", dir / "g.prdc", "--height", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("height = 1\n") == 0);
  CHECK(run({"chain", "show", dir / "g.prdc", "--height", "2"}).code == 1);

  write_text(dir / "s.cfg", "block_count = 12\n");
  REQUIRE(run({"sim", "run", dir / "s.cfg", "--seed", "1", "--ledger-out", dir / "l.prdc", "--out", dir / "m.csv"}).code == 0);
  CHECK(run({"chain", "validate", dir / "l.prdc"}).out == "valid: 14 blocks\n");
  auto bytes = read_file(dir / "l.prdc");
  bytes[bytes.size() / 2] ^= 0x40;
  write_file(dir / "bad.prdc", bytes);
  r = run({"chain", "validate", dir / "bad.prdc"});
  CHECK(r.code == 1);
  CHECK(r.out.find("invalid: first bad block") == 0);
  write_text(dir / "junk.prdc", "not a ledger");
  CHECK(run({"chain", "validate", dir / "junk.prdc"}).code == 1);
}

TEST_CASE("sim and bench outputs") {
  TempDir dir;
  write_text(dir / "s.cfg", "block_count = 20\n");
  REQUIRE(run({"sim", "run", dir / "s.cfg", "--seed", "7", "--out", dir / "a.csv"}).code == 0);
  REQUIRE(run({"sim", "run", dir / "s.cfg", "--seed", "7", "--out", dir / "b.csv"}).code == 0);
  CHECK(read_text(dir / "a.csv") == read_text(dir / "b.csv"));
  write_text(dir / "bad.cfg", "colour = red\n");
  const auto bad = run({"sim", "run", dir / "bad.cfg"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("colour") != std::string::npos);

  const auto t5 = run({"bench", "table5", "--seed", "7"});
  REQUIRE(t5.code == 0);
  std::istringstream lines(t5.out);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  REQUIRE(rows.size() == 11);
  for (int i = 1; i <= 10; ++i) CHECK(rows[static_cast<std::size_t>(i)].find("block_count," + std::to_string(10 * i) + ",") == 0);

  const auto sweep = run({"sim", "sweep-endorsers", "--counts", "1,19", "--format", "jsonl"});
  CHECK(sweep.code == 0);
  CHECK(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 2);
  CHECK(run({"sim", "sweep-endorsers", "--counts", "20"}).code == 1);
  CHECK(run({"sim", "sweep-blocksize", "--counts", "0"}).code == 1);
}
