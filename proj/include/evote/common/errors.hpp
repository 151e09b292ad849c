#pragma once

#include <stdexcept>
#include <string>

namespace evote {

// Root of every error the protocol library raises. Verification routines
// never throw for bad proofs; they return false instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EVOTE_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

EVOTE_DEFINE_ERROR(InvalidArgument);
EVOTE_DEFINE_ERROR(FormatError);

// group-crypto
EVOTE_DEFINE_ERROR(DecodeRangeError);
EVOTE_DEFINE_ERROR(MissingShareError);
EVOTE_DEFINE_ERROR(DuplicateShareError);
EVOTE_DEFINE_ERROR(InvalidPartialProof);

// registry / ballot
EVOTE_DEFINE_ERROR(DuplicateVoter);
EVOTE_DEFINE_ERROR(IndexOutOfRange);
EVOTE_DEFINE_ERROR(MalformedChoice);

// tally
EVOTE_DEFINE_ERROR(FairnessViolation);
EVOTE_DEFINE_ERROR(AlreadyClosed);
EVOTE_DEFINE_ERROR(ElectionClosed);
EVOTE_DEFINE_ERROR(MixRejected);

// ballotcoin
EVOTE_DEFINE_ERROR(NoOnlineNodes);

#undef EVOTE_DEFINE_ERROR

}  // namespace evote
