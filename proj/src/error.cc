// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/error.h"

namespace uiground {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedGeometry: return "malformed-geometry";
    case ErrorCode::kOutOfBounds: return "out-of-bounds";
    case ErrorCode::kMalformedToken: return "malformed-token";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kInvertedCoordinates: return "inverted-coordinates";
    case ErrorCode::kIneligible: return "ineligible";
    case ErrorCode::kEmptyScreen: return "empty-screen";
    case ErrorCode::kMissingBBox: return "missing-bbox";
    case ErrorCode::kUnknownTask: return "unknown-task";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kEmptyConversation: return "empty-conversation";
    case ErrorCode::kTransport: return "transport";
    case ErrorCode::kUnparseableAnswer: return "unparseable-answer";
    case ErrorCode::kUnknownLabel: return "unknown-label";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kEmptyInput: return "empty-input";
    case ErrorCode::kDegenerateLabel: return "degenerate-label";
    case ErrorCode::kJudgeParse: return "judge-parse";
    case ErrorCode::kInsufficientPool: return "insufficient-pool";
    case ErrorCode::kMisalignedIds: return "misaligned-ids";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace uiground
