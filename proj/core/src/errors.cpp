#include "lceval/errors.hpp"

namespace lceval {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoWords: return "NoWords";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::NonTree: return "NonTree";
    case ErrorKind::EmptyTree: return "EmptyTree";
    case ErrorKind::Unalignable: return "Unalignable";
    case ErrorKind::EmptyStimulus: return "EmptyStimulus";
    case ErrorKind::TemplateInvalid: return "TemplateInvalid";
    case ErrorKind::AuthMissing: return "AuthMissing";
    case ErrorKind::RateLimited: return "RateLimited";
    case ErrorKind::ProviderError: return "ProviderError";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::OfflineCacheMiss: return "OfflineCacheMiss";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::NoPairs: return "NoPairs";
    case ErrorKind::EmptyEssay: return "EmptyEssay";
    case ErrorKind::InsufficientItems: return "InsufficientItems";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace lceval
