#pragma once

#include <stdexcept>
#include <string>

namespace vocarch {

enum class ErrorCode {
  // corpus / manifest
  MissingAudio,
  DanglingReference,
  SchemaError,
  AgeOutOfRange,
  YearOutsideCorpusPeriods,
  // signal / audio
  TooShort,
  UnsupportedFormat,
  CorruptFile,
  GridMismatch,
  // formants
  NumericalInstability,
  MissingFormant,
  NonPositiveFormant,
  // features
  EmptyChunk,
  NoFormantFrames,
  // model
  RankDeficient,
  EmptyLevel,
  NonConvergence,
  // synthesis
  ParameterOutOfRange,
  // cli
  MissingStageArtifact,
  ConfigError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace vocarch
