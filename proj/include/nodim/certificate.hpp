#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodim/colorful.hpp"
#include "nodim/hamsandwich.hpp"
#include "nodim/tverberg.hpp"

namespace nodim {

inline constexpr const char* kSchemaVersion = "tverberg-nd/1";

struct InputRecord {
  std::string digest;
  std::size_t points = 0;
  std::size_t dim = 0;

  friend bool operator==(const InputRecord&, const InputRecord&) = default;
};

struct CertificateParameters {
  std::size_t k = 0;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> m;
  std::size_t arity = 4;
  std::size_t search_arity = 3;
  SelectionRule rule = SelectionRule::kExactExpectation;
  std::size_t exact_diameter_limit = kExactDiameterLimit;
  Summation summation = Summation::kNaive;

  friend bool operator==(const CertificateParameters&, const CertificateParameters&) = default;
};

/// Everything one command writes. Exactly one of the three payloads is set,
/// matching `command` ("tverberg", "colorful" or "hamsandwich").
struct CertificateDocument {
  std::string schema_version = kSchemaVersion;
  std::string command;
  std::string mode;
  std::vector<InputRecord> inputs;
  CertificateParameters parameters;
  std::optional<TverbergCertificate> tverberg;
  std::optional<ColorfulCertificate> colorful;
  std::optional<DepthCertificate> depth;
  std::optional<double> timing_ms;

  friend bool operator==(const CertificateDocument&, const CertificateDocument&) = default;
};

PartitionOptions partition_options(const CertificateParameters& p);

/// Pretty-printed JSON, trailing newline. Doubles use the shortest form that
/// parses back to the same value.
std::string emit(const CertificateDocument& doc);
/// Throws ParseError on malformed or wrong-version documents.
CertificateDocument parse_certificate(const std::string& text);

}  // namespace nodim
