// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_VERSION_H_
#define UIGROUND_VERSION_H_

namespace uiground {

inline constexpr char kToolName[] = "uiground";
inline constexpr char kVersion[] = "0.1.0";

}  // namespace uiground

#endif  // UIGROUND_VERSION_H_
