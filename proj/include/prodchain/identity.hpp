#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prodchain/algebra/group.hpp"
#include "prodchain/algebra/lattice.hpp"
#include "prodchain/algebra/ring.hpp"
#include "prodchain/bytes.hpp"
#include "prodchain/hashing.hpp"

namespace prodchain::identity {

enum class DocumentType : std::uint8_t { kTradeLicense = 0, kNationalId = 1, kInternationalId = 2 };
enum class Role : std::uint8_t { kSupplier = 0, kManufacturer, kDistributor, kRetailer, kCustomer, kLogistics };

std::string_view to_string(DocumentType t);
std::string_view to_string(Role r);
/// Throws FieldError("document_type" / "role") for names outside the closed sets.
DocumentType parse_document_type(std::string_view s);
Role parse_role(std::string_view s);

/// Registration evidence presented to the key center.
struct ProofMetrics {
  DocumentType document_type = DocumentType::kTradeLicense;
  Bytes document_bytes;
  Role role = Role::kSupplier;

  /// type byte, role byte, u32be length, document bytes.
  Bytes encode() const;
  friend bool operator==(const ProofMetrics&, const ProofMetrics&) = default;
};

/// Parses `key = value` lines with keys document_type, role and document (UTF-8 text).
/// Blank lines and '#' comments are skipped; unknown keys are rejected.
ProofMetrics parse_proof_metrics(std::string_view config);

/// Returns pm unchanged when acceptable; otherwise throws FieldError naming the field.
ProofMetrics validate_credentials(const ProofMetrics& pm);

struct PartialKey {
  Bytes value;
  friend bool operator==(const PartialKey&, const PartialKey&) = default;
};

struct KeyPair {
  algebra::GroupScalar secret;  // K_u-
  algebra::GroupElement public_key;  // K_u+ = K_u- * P

  /// Throws InvalidInput for a zero scalar.
  static KeyPair from_private(algebra::GroupScalar secret,
                              const algebra::TransparentGroup& group = algebra::TransparentGroup::standard());
  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

/// The key center's random basis for this registrant.
algebra::LatticeBasis generate_basis(const ProofMetrics& pm);
PartialKey derive_partial_key(const ProofMetrics& pm);
KeyPair generate_keypair(const PartialKey& partial, const ProofMetrics& pm);

struct StakeholderWallet {
  hashing::Digest pseudo_id;
  KeyPair keys;
  Role role = Role::kSupplier;
  /// Digest of the ring value A*s + e from key generation's noise term. Informational;
  /// verification only uses keys.public_key.
  hashing::Digest aux_commitment;
};

/// Issues wallets and enforces pseudo-identity uniqueness. Single writer.
class Registry {
 public:
  /// Throws FieldError("pseudo_id") when these credentials were already registered.
  const StakeholderWallet& register_stakeholder(const ProofMetrics& pm);
  /// Inserts an externally issued wallet; same uniqueness rule.
  const StakeholderWallet& insert(StakeholderWallet wallet);

  const StakeholderWallet* find(const hashing::Digest& pseudo_id) const;
  bool contains(const hashing::Digest& pseudo_id) const { return find(pseudo_id) != nullptr; }
  std::size_t size() const noexcept { return order_.size(); }
  /// Wallets in registration order.
  std::vector<const StakeholderWallet*> wallets() const;

 private:
  std::map<hashing::Digest, StakeholderWallet> by_id_;
  std::vector<hashing::Digest> order_;
};

/// Builds a wallet without touching any registry.
StakeholderWallet issue_wallet(const ProofMetrics& pm);

/// The three organization accounts loaded at genesis.
std::vector<ProofMetrics> genesis_organizations();

/// Public part of a wallet as read back from an export file.
struct PublicWallet {
  hashing::Digest pseudo_id;
  Role role = Role::kSupplier;
  algebra::GroupElement public_key;
};

std::string export_wallet(const StakeholderWallet& w);
/// Private key file; meant to be readable by its owner only.
std::string export_private_key(const StakeholderWallet& w);
PublicWallet parse_wallet(std::string_view text);
/// Returns (pseudo_id, key pair) with the public key recomputed from the secret.
std::pair<hashing::Digest, KeyPair> parse_private_key(std::string_view text);

/// Splits `key = value` lines; used by every flat text format in the project.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text);

}  // namespace prodchain::identity
