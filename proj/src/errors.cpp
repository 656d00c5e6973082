#include "vocarch/errors.hpp"

namespace vocarch {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingAudio: return "MissingAudio";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::AgeOutOfRange: return "AgeOutOfRange";
    case ErrorCode::YearOutsideCorpusPeriods: return "YearOutsideCorpusPeriods";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NumericalInstability: return "NumericalInstability";
    case ErrorCode::MissingFormant: return "MissingFormant";
    case ErrorCode::NonPositiveFormant: return "NonPositiveFormant";
    case ErrorCode::EmptyChunk: return "EmptyChunk";
    case ErrorCode::NoFormantFrames: return "NoFormantFrames";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptyLevel: return "EmptyLevel";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::MissingStageArtifact: return "MissingStageArtifact";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace vocarch
