#pragma once

#include <stdexcept>
#include <string>

namespace zw {

// Every failure the library reports derives from Error so callers can
// aggregate per-item failures without catching std::exception wholesale.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ZW_DEFINE_ERROR(Name)            \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

ZW_DEFINE_ERROR(PoleError)
ZW_DEFINE_ERROR(PrecisionError)
ZW_DEFINE_ERROR(NotExactError)
ZW_DEFINE_ERROR(DiagramError)
ZW_DEFINE_ERROR(SimplicialIdentityError)
ZW_DEFINE_ERROR(TruncationError)
ZW_DEFINE_ERROR(UnsupportedDegreeError)
ZW_DEFINE_ERROR(MissingDataError)
ZW_DEFINE_ERROR(OrderDetectionError)
ZW_DEFINE_ERROR(ZeroComparandError)

#undef ZW_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace zw
