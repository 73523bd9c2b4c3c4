#pragma once

#include <stdexcept>
#include <string>

namespace qfla {

/// Base of every error thrown by the library. The CLI maps these to exit
/// status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QFLA_DEFINE_ERROR(Name)            \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

QFLA_DEFINE_ERROR(ParseError);
QFLA_DEFINE_ERROR(DimensionMismatch);
QFLA_DEFINE_ERROR(NotMonomial);
QFLA_DEFINE_ERROR(NotNilpotent);
QFLA_DEFINE_ERROR(BadN);
QFLA_DEFINE_ERROR(BadSpec);
QFLA_DEFINE_ERROR(BadPivot);
QFLA_DEFINE_ERROR(NonBlockForm);
QFLA_DEFINE_ERROR(NotSimultaneouslyDiagonal);
QFLA_DEFINE_ERROR(ZeroScale);
QFLA_DEFINE_ERROR(SearchLimitExceeded);

#undef QFLA_DEFINE_ERROR

}  // namespace qfla
