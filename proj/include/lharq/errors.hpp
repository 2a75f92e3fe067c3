// SPDX-License-Identifier: Apache-2.0
//
// lharq: truncated L-HARQ status-update simulator and age analytics
// Copyright (C) 2026 The lharq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace lharq {

// Parameter outside the documented domain of an operation.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mixing-rate constraint rho < R violated.
class constraint_violation : public invalid_parameter {
public:
    using invalid_parameter::invalid_parameter;
};

// Inconsistent bookkeeping counts or an empty packet set.
class invalid_state : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Operation invoked in the wrong protocol phase (e.g. backtracking a failed circle).
class protocol_state_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class numerical_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// p_ff = 1: no departure ever happens, every moment diverges.
class divergent_model : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Conditional probability with a vanishing conditioning event.
class conditional_undefined : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class degenerate_target : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class insufficient_data : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw invalid_parameter(what);
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw invalid_parameter(what);
}

}  // namespace detail
}  // namespace lharq
