#pragma once

#include <stdexcept>
#include <string>

namespace homcov {

enum class Errc {
  TooFewSides,
  NotConvex,
  DegenerateVertex,
  Unsupported,
  NoValidDirection,
  UnboundedQ,
  SearchExhausted,
  IncidenceDrift,
  TooLarge,
  RegionEmpty,
  BandViolation,
  CertificateFailure,
  BadInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::TooFewSides: return "TooFewSides";
    case Errc::NotConvex: return "NotConvex";
    case Errc::DegenerateVertex: return "DegenerateVertex";
    case Errc::Unsupported: return "Unsupported";
    case Errc::NoValidDirection: return "NoValidDirection";
    case Errc::UnboundedQ: return "UnboundedQ";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::IncidenceDrift: return "IncidenceDrift";
    case Errc::TooLarge: return "TooLarge";
    case Errc::RegionEmpty: return "RegionEmpty";
    case Errc::BandViolation: return "BandViolation";
    case Errc::CertificateFailure: return "CertificateFailure";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace homcov
