// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_ERROR_H_
#define UIGROUND_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace uiground {

enum class ErrorCode {
  kMalformedGeometry,
  kOutOfBounds,
  kMalformedToken,
  kOutOfRange,
  kInvertedCoordinates,
  kIneligible,
  kEmptyScreen,
  kMissingBBox,
  kUnknownTask,
  kSchema,
  kFormat,
  kEmptyConversation,
  kTransport,
  kUnparseableAnswer,
  kUnknownLabel,
  kLengthMismatch,
  kEmptyInput,
  kDegenerateLabel,
  kJudgeParse,
  kInsufficientPool,
  kMisalignedIds,
  kIo,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uiground

#endif  // UIGROUND_ERROR_H_
