#pragma once

// Claim registry and the routines that check each claim over a parameter
// range against brute force. Reports serialize to JSON for the CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holocirc/error.hpp"
#include "holocirc/notation.hpp"

namespace holocirc {

class UnknownClaimError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Soft limits; exceeding them raises ResourceBoundError unless forced.
struct Bounds {
  int hol_max_n = 8;
  std::uint64_t graph_max = 32;
};
// Reads {"hol_max_n": ..., "graph_max": ...}; missing keys keep defaults.
Bounds load_bounds(const std::string& path);
Bounds bounds_from_json(const nlohmann::json& j);

struct VerifyOptions {
  std::optional<IntRange> n;             // exponent / parameter range
  std::vector<std::uint64_t> moduli;     // graph orders (or primes for lem-2.1)
  std::uint64_t samples = 0;             // 0: claim default
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool force = false;
  Bounds bounds;
};

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct VerificationReport {
  std::string claim_id;
  nlohmann::json parameters = nlohmann::json::object();
  Status status = Status::Skipped;
  nlohmann::json evidence = nlohmann::json::array();
  double runtime = 0;
  std::string replay;  // set on failure

  nlohmann::json to_json() const;
};

struct ClaimInfo {
  std::string id;
  std::string anchor;  // what is being checked, in words
  bool takes_n = false;
  bool takes_modulus = false;
  IntRange default_n{};
  std::vector<std::uint64_t> default_moduli;
};

const std::vector<ClaimInfo>& claim_registry();
const ClaimInfo& find_claim(std::string_view id);  // throws UnknownClaimError

VerificationReport verify_claim(std::string_view id, const VerifyOptions& opts);

}  // namespace holocirc
