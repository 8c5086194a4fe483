#include "prodchain/identity.hpp"

#include <array>
#include <set>
#include <sstream>

#include "prodchain/error.hpp"

namespace prodchain::identity {

namespace {
constexpr std::array<std::string_view, 3> kDocumentNames{"trade-license", "national-id", "international-id"};
constexpr std::array<std::string_view, 6> kRoleNames{"supplier", "manufacturer", "distributor",
                                                     "retailer", "customer", "logistics"};
constexpr std::string_view kRingGeneratorSeed = "prodchain/ring-generator/v1";

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}
}  // namespace

std::string_view to_string(DocumentType t) {
  auto i = static_cast<std::size_t>(t);
  if (i >= kDocumentNames.size()) throw FieldError("document_type", "unknown document type");
  return kDocumentNames[i];
}

std::string_view to_string(Role r) {
  auto i = static_cast<std::size_t>(r);
  if (i >= kRoleNames.size()) throw FieldError("role", "unknown role");
  return kRoleNames[i];
}

DocumentType parse_document_type(std::string_view s) {
  for (std::size_t i = 0; i < kDocumentNames.size(); ++i)
    if (kDocumentNames[i] == s) return static_cast<DocumentType>(i);
  throw FieldError("document_type", "unknown document type '" + std::string(s) + "'");
}

Role parse_role(std::string_view s) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i)
    if (kRoleNames[i] == s) return static_cast<Role>(i);
  throw FieldError("role", "unknown role '" + std::string(s) + "'");
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw DecodeError("line " + std::to_string(line_no) + ": expected key = value");
    out.emplace_back(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

Bytes ProofMetrics::encode() const {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(document_type));
  out.push_back(static_cast<std::uint8_t>(role));
  put_u32_be(out, static_cast<std::uint32_t>(document_bytes.size()));
  append(out, document_bytes);
  return out;
}

ProofMetrics parse_proof_metrics(std::string_view config) {
  ProofMetrics pm;
  bool have_type = false, have_role = false, have_doc = false;
  std::set<std::string> seen;
  for (const auto& [key, value] : parse_key_values(config)) {
    if (!seen.insert(key).second) throw FieldError(key, "repeated field");
    if (key == "document_type") {
      pm.document_type = parse_document_type(value);
      have_type = true;
    } else if (key == "role") {
      pm.role = parse_role(value);
      have_role = true;
    } else if (key == "document") {
      pm.document_bytes = to_bytes(value);
      have_doc = true;
    } else {
      throw FieldError(key, "unknown field");
    }
  }
  if (!have_type) throw FieldError("document_type", "missing");
  if (!have_role) throw FieldError("role", "missing");
  if (!have_doc) throw FieldError("document", "missing");
  return validate_credentials(pm);
}

ProofMetrics validate_credentials(const ProofMetrics& pm) {
  if (static_cast<std::size_t>(pm.document_type) >= kDocumentNames.size())
    throw FieldError("document_type", "unknown document type");
  if (static_cast<std::size_t>(pm.role) >= kRoleNames.size()) throw FieldError("role", "unknown role");
  if (pm.document_bytes.empty()) throw FieldError("document", "empty document");
  return pm;
}

KeyPair KeyPair::from_private(algebra::GroupScalar secret, const algebra::TransparentGroup& group) {
  secret = group.scalar(secret.value);
  if (secret.value == 0) throw InvalidInput("private key must be nonzero");
  return {secret, group.mul(secret, group.generator())};
}

algebra::LatticeBasis generate_basis(const ProofMetrics& pm) {
  return algebra::generate_basis(validate_credentials(pm).encode());
}

PartialKey derive_partial_key(const ProofMetrics& pm) {
  return {hashing::lash_compress(generate_basis(pm).encode()).bytes()};
}

namespace {

struct KeyMaterial {
  KeyPair keys;
  algebra::SmallRingElement secret_poly;
};

KeyMaterial derive_key_material(const PartialKey& partial, const ProofMetrics& pm) {
  if (partial.value.empty()) throw InvalidInput("empty partial key");
  const auto& group = algebra::TransparentGroup::standard();
  const auto pm_digest = hashing::lash_compress(validate_credentials(pm).encode());
  for (std::uint32_t counter = 0;; ++counter) {
    Bytes seed = partial.value;
    append(seed, pm_digest);
    put_u32_be(seed, counter);
    auto small = algebra::sample_small(seed, algebra::RingParams::standard());
    // Read the trits as base-3 digits and reduce into the scalar field.
    unsigned __int128 acc = 0;
    for (Eigen::Index i = 0; i < small.coeffs().size(); ++i)
      acc = (acc * 3 + static_cast<unsigned>(small.coeffs()[i] + 1)) % group.order();
    if (acc == 0) continue;
    return {KeyPair::from_private({static_cast<std::uint64_t>(acc)}, group), std::move(small)};
  }
}

}  // namespace

KeyPair generate_keypair(const PartialKey& partial, const ProofMetrics& pm) {
  return derive_key_material(partial, pm).keys;
}

StakeholderWallet issue_wallet(const ProofMetrics& pm) {
  validate_credentials(pm);
  auto partial = derive_partial_key(pm);
  auto material = derive_key_material(partial, pm);
  const auto params = algebra::RingParams::standard();
  Bytes noise_seed = partial.value;
  append(noise_seed, to_bytes("noise"));
  auto a = algebra::sample_uniform(to_bytes(kRingGeneratorSeed), params);
  auto committed = a * material.secret_poly.lift() + algebra::sample_small(noise_seed, params).lift();
  return StakeholderWallet{hashing::lash_compress(pm.encode()), material.keys, pm.role,
                           hashing::lash_compress(committed.encode())};
}

const StakeholderWallet& Registry::register_stakeholder(const ProofMetrics& pm) {
  auto id = hashing::lash_compress(validate_credentials(pm).encode());
  if (contains(id)) throw FieldError("pseudo_id", "credentials already registered");
  return insert(issue_wallet(pm));
}

const StakeholderWallet& Registry::insert(StakeholderWallet wallet) {
  if (contains(wallet.pseudo_id)) throw FieldError("pseudo_id", "credentials already registered");
  auto id = wallet.pseudo_id;
  auto [it, _] = by_id_.emplace(id, std::move(wallet));
  order_.push_back(std::move(id));
  return it->second;
}

const StakeholderWallet* Registry::find(const hashing::Digest& pseudo_id) const {
  auto it = by_id_.find(pseudo_id);
  return it == by_id_.end() ? nullptr : &it->second;
}

std::vector<const StakeholderWallet*> Registry::wallets() const {
  std::vector<const StakeholderWallet*> out;
  out.reserve(order_.size());
  for (const auto& id : order_) out.push_back(&by_id_.at(id));
  return out;
}

std::vector<ProofMetrics> genesis_organizations() {
  return {
      {DocumentType::kTradeLicense, to_bytes("PRODCHAIN genesis organization 1"), Role::kManufacturer},
      {DocumentType::kTradeLicense, to_bytes("PRODCHAIN genesis organization 2"), Role::kDistributor},
      {DocumentType::kTradeLicense, to_bytes("PRODCHAIN genesis organization 3"), Role::kRetailer},
  };
}

std::string export_wallet(const StakeholderWallet& w) {
  const auto& g = algebra::TransparentGroup::standard();
  std::ostringstream out;
  out << "pseudo_id = " << w.pseudo_id.hex() << "\n"
      << "role = " << to_string(w.role) << "\n"
      << "public_key = " << to_hex(g.encode(w.keys.public_key)) << "\n"
      << "aux_commitment = " << w.aux_commitment.hex() << "\n";
  return out.str();
}

std::string export_private_key(const StakeholderWallet& w) {
  Bytes secret;
  put_u64_le(secret, w.keys.secret.value);
  std::ostringstream out;
  out << "# PRODCHAIN private key. Keep this file readable by its owner only.\n"
      << "pseudo_id = " << w.pseudo_id.hex() << "\n"
      << "private_key = " << to_hex(secret) << "\n";
  return out.str();
}

PublicWallet parse_wallet(std::string_view text) {
  const auto& g = algebra::TransparentGroup::standard();
  PublicWallet w;
  bool id = false, role = false, key = false;
  for (const auto& [k, v] : parse_key_values(text)) {
    if (k == "pseudo_id") {
      w.pseudo_id = hashing::Digest::from_hex(v);
      id = true;
    } else if (k == "role") {
      w.role = parse_role(v);
      role = true;
    } else if (k == "public_key") {
      w.public_key = g.decode(from_hex(v));
      key = true;
    } else if (k != "aux_commitment") {
      throw FieldError(k, "unknown wallet field");
    }
  }
  if (!id) throw FieldError("pseudo_id", "missing");
  if (w.pseudo_id.size() != 32) throw FieldError("pseudo_id", "must be 32 bytes");
  if (!role) throw FieldError("role", "missing");
  if (!key) throw FieldError("public_key", "missing");
  return w;
}

std::pair<hashing::Digest, KeyPair> parse_private_key(std::string_view text) {
  std::optional<hashing::Digest> id;
  std::optional<std::uint64_t> secret;
  for (const auto& [k, v] : parse_key_values(text)) {
    if (k == "pseudo_id") {
      id = hashing::Digest::from_hex(v);
    } else if (k == "private_key") {
      auto bytes = from_hex(v);
      ByteReader in(bytes);
      secret = in.u64_le();
      in.expect_end();
      if (*secret == 0 || *secret >= algebra::TransparentGroup::standard().order())
        throw FieldError("private_key", "not a nonzero scalar below the group order");
    } else {
      throw FieldError(k, "unknown key-file field");
    }
  }
  if (!id) throw FieldError("pseudo_id", "missing");
  if (id->size() != 32) throw FieldError("pseudo_id", "must be 32 bytes");
  if (!secret) throw FieldError("private_key", "missing");
  return {*id, KeyPair::from_private({*secret})};
}

}  // namespace prodchain::identity
