// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace swipt::numerics {

/// Modified Bessel function of the first kind, order zero.
///
/// Power series below z = 30, Hankel asymptotic expansion above. Relative
/// error is below 1e-14 on [0, 50]. Throws DomainError for negative or
/// non-finite z; overflows to +inf beyond z ~ 713.
double bessel_i0(double z);

}  // namespace swipt::numerics
