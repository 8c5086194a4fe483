#include "prodchain/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "prodchain/error.hpp"
#include "prodchain/identity.hpp"
#include "prodchain/ledger.hpp"
#include "prodchain/metrics.hpp"
#include "prodchain/netsim.hpp"
#include "prodchain/poa.hpp"
#include "prodchain/signcryption.hpp"

namespace prodchain::cli {

namespace {

constexpr const char* kSynopsis =
    "usage: prodchain <command> [options]\n"
    "  keygen --doc <file> --type <trade-license|national-id|international-id> --role <role>\n"
    "         [--out <wallet>] [--key-out <private key>]\n"
    "  signcrypt --key <private key> --to <wallet>... --data <file> --product <id> --seed <n> [--out <file>]\n"
    "  unsigncrypt --key <private key> --from <wallet> --to <wallet>... --in <file> [--out <file>]\n"
    "  chain init --out <ledger>\n"
    "  chain validate <ledger>\n"
    "  chain show <ledger> --height <h>\n"
    "  poa rate --scheduled <days> --actual <days> [--threshold <days>]\n"
    "  sim run <scenario> [--seed <n>] [--out <file>] [--format csv|jsonl] [--ledger-out <file>] [--trace-out <file>]\n"
    "  sim sweep-blocksize [--scenario <file>] [--counts a,b,...] [--seed <n>] [--out <file>] [--format csv|jsonl]\n"
    "  sim sweep-endorsers [--scenario <file>] [--counts a,b,...] [--seed <n>] [--out <file>] [--format csv|jsonl]\n"
    "  bench table3|table5 [--scenario <file>] [--seed <n>] [--reps <n>] [--out <file>] [--format csv|jsonl]\n";

std::string read_text(const std::string& path) {
  const Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  write_file(path, ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

metrics::Format parse_format(const std::string& f) {
  return f == "jsonl" ? metrics::Format::kJsonLines : metrics::Format::kCsv;
}

netsim::Scenario load_scenario(const std::string& path) {
  if (path.empty()) return {};
  return netsim::parse_scenario(read_text(path));
}

struct Options {
  // keygen
  std::string doc, doc_type, role, key_out;
  // signcrypt / unsigncrypt
  std::string key, from, data, product, in;
  std::vector<std::string> to;
  // chain / sim positional
  std::string file;
  std::uint64_t height = 0;
  // poa
  double scheduled = 0, actual = 0, threshold = 0;
  // sim / bench
  std::string scenario, format = "csv", ledger_out, trace_out;
  std::vector<std::size_t> counts;
  std::optional<std::uint64_t> seed;
  std::size_t reps = 1;
  std::string out;
};

int run_keygen(const Options& o, std::ostream& out) {
  identity::ProofMetrics pm;
  pm.document_type = identity::parse_document_type(o.doc_type);
  pm.role = identity::parse_role(o.role);
  pm.document_bytes = read_file(o.doc);
  const auto wallet = identity::issue_wallet(pm);
  if (!o.key_out.empty()) emit(identity::export_private_key(wallet), o.key_out, out);
  emit(identity::export_wallet(wallet), o.out, out);
  return kExitOk;
}

std::vector<algebra::GroupElement> load_receivers(const std::vector<std::string>& paths) {
  std::vector<algebra::GroupElement> pubs;
  for (const auto& p : paths) pubs.push_back(identity::parse_wallet(read_text(p)).public_key);
  return pubs;
}

int run_signcrypt(const Options& o, std::ostream& out) {
  const auto [pseudo_id, keys] = identity::parse_private_key(read_text(o.key));
  const auto receivers = load_receivers(o.to);
  // Products are identified by a digest of the id string.
  const signcryption::Plaintext m{read_file(o.data), hashing::lash_compress(to_bytes("product:" + o.product)),
                                  keys.public_key};
  Bytes seed = to_bytes("prodchain-cli-signcrypt");
  put_u64_be(seed, o.seed.value_or(0));
  const auto c = signcryption::signcrypt(keys, receivers, m, seed);
  emit(to_hex(c.encode()) + "\n", o.out, out);
  return kExitOk;
}

int run_unsigncrypt(const Options& o, std::ostream& out) {
  const auto [pseudo_id, keys] = identity::parse_private_key(read_text(o.key));
  const auto sender = identity::parse_wallet(read_text(o.from));
  const auto receivers = load_receivers(o.to);
  const auto it = std::find(receivers.begin(), receivers.end(), keys.public_key);
  if (it == receivers.end()) throw FieldError("to", "the private key does not belong to any listed receiver");
  const auto c = signcryption::Ciphertext::decode(from_hex(trim(read_text(o.in))));
  const auto m = signcryption::unsigncrypt(static_cast<std::size_t>(it - receivers.begin()), keys, sender.public_key,
                                           receivers, c);
  emit(std::string(m.d.begin(), m.d.end()), o.out, out);
  return kExitOk;
}

int run_chain_init(const Options& o, std::ostream&) {
  ledger::save_chain(ledger::Chain::genesis(), o.out);
  return kExitOk;
}

int run_chain_validate(const Options& o, std::ostream& out) {
  const auto blocks = ledger::split_ledger(read_file(o.file));
  if (auto bad = ledger::validate_encoded(blocks)) {
    out << "invalid: first bad block " << *bad << " of " << blocks.size() << "\n";
    return kExitDomainError;
  }
  out << "valid: " << blocks.size() << " blocks\n";
  return kExitOk;
}

int run_chain_show(const Options& o, std::ostream& out) {
  const auto blocks = ledger::split_ledger(read_file(o.file));
  if (o.height >= blocks.size()) throw FieldError("height", "no block at height " + std::to_string(o.height));
  const auto b = ledger::Prodblock::decode(blocks[o.height]);
  std::ostringstream s;
  s << "height = " << b.height << "\n"
    << "prev_hash = " << b.prev_hash.hex() << "\n"
    << "timestamp = " << shortest(b.timestamp) << "\n"
    << "initiator = " << b.initiator.hex() << "\n"
    << "receivers = " << b.payload.z.size() << "\n"
    << "payload_bytes = " << b.payload.encode().size() << "\n"
    << "block_hash = " << b.block_hash.hex() << "\n";
  out << s.str();
  return kExitOk;
}

int run_poa_rate(const Options& o, std::ostream& out) {
  poa::PoAConfig cfg;
  cfg.upper_threshold_days = o.threshold;
  cfg.validate();
  const poa::ServiceRecord rec{poa::ServiceType::kDelivery, o.scheduled, o.actual};
  const auto state = poa::update_rating({}, rec, cfg);
  out << "rating = " << state.rating << "\n"
      << "access = " << (poa::access_decision(state) == poa::Access::kAllow ? "allow" : "severity-concern") << "\n";
  return kExitOk;
}

int run_sim(const Options& o, std::ostream& out) {
  auto s = load_scenario(o.file);
  if (o.seed) s.rng_seed = *o.seed;
  const auto result = netsim::run_scenario(s);
  std::vector<metrics::MetricReport> rows{
      metrics::summarize(result, "block_count", static_cast<double>(s.block_count))};
  if (!o.ledger_out.empty()) ledger::save_chain(result.chain, o.ledger_out);
  if (!o.trace_out.empty()) emit(result.to_json() + "\n", o.trace_out, out);
  emit(metrics::render(rows, parse_format(o.format)), o.out, out);
  return kExitOk;
}

int run_sweep(const Options& o, std::ostream& out, bool blocksize) {
  auto base = load_scenario(o.scenario);
  if (o.seed) base.rng_seed = *o.seed;
  std::vector<std::size_t> counts = o.counts;
  if (counts.empty()) {
    if (blocksize) {
      counts = {1, 10, 100, 250, 600, 800, 1000};
    } else {
      for (std::size_t e = 1; e < base.node_count; ++e) counts.push_back(e);
    }
  }
  // Validates the ranges before any run starts.
  for (auto n : counts) {
    if (blocksize && (n < 1 || n > 1000)) throw FieldError("counts", "block sizes must be in [1, 1000]");
    if (!blocksize && (n < 1 || n + 1 > base.node_count))
      throw FieldError("counts", "endorser counts must be in [1, node_count - 1]");
  }
  std::vector<metrics::MetricReport> rows;
  for (auto n : counts) {
    auto s = base;
    (blocksize ? s.tx_per_block : s.endorser_count) = n;
    rows.push_back(metrics::summarize(netsim::run_scenario(s), blocksize ? "tx_per_block" : "endorsers",
                                      static_cast<double>(n)));
  }
  emit(metrics::render(rows, parse_format(o.format)), o.out, out);
  return kExitOk;
}

int run_bench(const Options& o, std::ostream& out, bool table3) {
  const auto base = load_scenario(o.scenario);
  auto rows = metrics::bench_block_counts(base, o.seed.value_or(0), o.reps);
  if (table3) metrics::attach_fits(rows);
  emit(metrics::render(rows, parse_format(o.format)), o.out, out);
  return kExitOk;
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "output file (default: standard output)");
}

void add_report_options(CLI::App* cmd, Options& o) {
  add_output(cmd, o);
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"prodchain", "prodchain"};
  app.require_subcommand(1);
  Options o;

  auto* keygen = app.add_subcommand("keygen", "issue a stakeholder wallet");
  keygen->add_option("--doc", o.doc, "registration document")->required()->check(CLI::ExistingFile);
  keygen->add_option("--type", o.doc_type, "document type")->required();
  keygen->add_option("--role", o.role, "stakeholder role")->required();
  keygen->add_option("--key-out", o.key_out, "private key file");
  add_output(keygen, o);

  auto* sc = app.add_subcommand("signcrypt", "signcrypt product data for a set of receivers");
  sc->add_option("--key", o.key, "sender private key file")->required();
  sc->add_option("--to", o.to, "receiver wallet files, in order")->required();
  sc->add_option("--data", o.data, "product data file")->required();
  sc->add_option("--product", o.product, "product identifier")->required();
  sc->add_option("--seed", o.seed, "random seed");
  add_output(sc, o);

  auto* usc = app.add_subcommand("unsigncrypt", "verify and decrypt a ciphertext");
  usc->add_option("--key", o.key, "receiver private key file")->required();
  usc->add_option("--from", o.from, "sender wallet file")->required();
  usc->add_option("--to", o.to, "receiver wallet files, in signcryption order")->required();
  usc->add_option("--in", o.in, "ciphertext hex file")->required();
  add_output(usc, o);

  auto* chain = app.add_subcommand("chain", "ledger files");
  chain->require_subcommand(1);
  auto* chain_init = chain->add_subcommand("init", "write a genesis-only ledger");
  chain_init->add_option("--out", o.out, "ledger file")->required();
  auto* chain_validate = chain->add_subcommand("validate", "check every block of a ledger file");
  chain_validate->add_option("file", o.file, "ledger file")->required();
  auto* chain_show = chain->add_subcommand("show", "print one block");
  chain_show->add_option("file", o.file, "ledger file")->required();
  chain_show->add_option("--height", o.height, "block height")->required();

  auto* poa_cmd = app.add_subcommand("poa", "proof of authority");
  poa_cmd->require_subcommand(1);
  auto* rate = poa_cmd->add_subcommand("rate", "rate one service");
  rate->add_option("--scheduled", o.scheduled, "scheduled days")->required();
  rate->add_option("--actual", o.actual, "actual days")->required();
  rate->add_option("--threshold", o.threshold, "grace period in days");

  auto* sim = app.add_subcommand("sim", "network simulation");
  sim->require_subcommand(1);
  auto* sim_run = sim->add_subcommand("run", "run one scenario");
  sim_run->add_option("scenario", o.file, "scenario file")->required();
  sim_run->add_option("--ledger-out", o.ledger_out, "write the resulting ledger");
  sim_run->add_option("--trace-out", o.trace_out, "write the full event trace as JSON");
  add_report_options(sim_run, o);
  auto* sweep_bs = sim->add_subcommand("sweep-blocksize", "throughput against transactions per block");
  auto* sweep_en = sim->add_subcommand("sweep-endorsers", "throughput against endorser count");
  for (auto* cmd : {sweep_bs, sweep_en}) {
    cmd->add_option("--scenario", o.scenario, "base scenario file");
    cmd->add_option("--counts", o.counts, "values to sweep")->delimiter(',');
    add_report_options(cmd, o);
  }

  auto* bench = app.add_subcommand("bench", "fixed result tables");
  bench->require_subcommand(1);
  auto* table3 = bench->add_subcommand("table3", "latency by block count");
  auto* table5 = bench->add_subcommand("table5", "success rate and throughput by block count");
  for (auto* cmd : {table3, table5}) {
    cmd->add_option("--scenario", o.scenario, "base scenario file");
    cmd->add_option("--reps", o.reps, "seeded repetitions per row")->check(CLI::PositiveNumber);
    add_report_options(cmd, o);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kSynopsis;
    return kExitUsage;
  }

  try {
    if (keygen->parsed()) return run_keygen(o, out);
    if (sc->parsed()) return run_signcrypt(o, out);
    if (usc->parsed()) return run_unsigncrypt(o, out);
    if (chain_init->parsed()) return run_chain_init(o, out);
    if (chain_validate->parsed()) return run_chain_validate(o, out);
    if (chain_show->parsed()) return run_chain_show(o, out);
    if (rate->parsed()) return run_poa_rate(o, out);
    if (sim_run->parsed()) return run_sim(o, out);
    if (sweep_bs->parsed()) return run_sweep(o, out, true);
    if (sweep_en->parsed()) return run_sweep(o, out, false);
    if (table3->parsed()) return run_bench(o, out, true);
    if (table5->parsed()) return run_bench(o, out, false);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  err << kSynopsis;
  return kExitUsage;
}

}  // namespace prodchain::cli
