#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tropkit {

enum class Errc {
  TagMismatch = 1,
  DivisionByBottom,
  Divergent,
  DimensionMismatch,
  ZeroColumn,
  NoCycle,
  Unbounded,
  EmptySupport,
  NotSeparable,
  Infeasible,
  TooLarge,
  NoFlow,
  Inconsistent,
  NotStronglyRegular,
  CertificateInvalid,
  ImprovingCycle,
  Diverged,
  BadConfig,
  InvalidArgument,
  Parse,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, nlohmann::json detail = nullptr)
      : std::runtime_error(what), code_(code), detail_(std::move(detail)) {}

  Errc code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

  // structured body used by the CLI and the C API
  nlohmann::json body() const;

 private:
  Errc code_;
  nlohmann::json detail_;
};

}  // namespace tropkit
