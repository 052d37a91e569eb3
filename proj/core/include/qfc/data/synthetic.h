// Copyright 2026 The qfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef QFC_DATA_SYNTHETIC_H_
#define QFC_DATA_SYNTHETIC_H_

#include <cstdint>

#include "qfc/data/ett.h"

namespace qfc::data {

// Row count of the hourly ETTh1 release.
inline constexpr std::size_t kEtth1Rows = 17420;

// Deterministic stand-in with the ETT layout: hourly rows starting
// 2016-07-01 00:00:00, six load channels driven by shared daily/weekly
// cycles and an AR(1) disturbance, and an oil temperature that low-pass
// filters the load.
RawSeries SynthesizeEtt(std::size_t rows = kEtth1Rows, std::uint64_t seed = 2016);

}  // namespace qfc::data

#endif  // QFC_DATA_SYNTHETIC_H_
