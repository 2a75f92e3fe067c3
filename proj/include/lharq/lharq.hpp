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

#include "lharq/errors.hpp"
#include "lharq/random.hpp"
#include "lharq/numeric.hpp"
#include "lharq/hypergeometric.hpp"
#include "lharq/channel.hpp"
#include "lharq/fbl.hpp"
#include "lharq/harq.hpp"
#include "lharq/aoei.hpp"
#include "lharq/encoding.hpp"
#include "lharq/sensitivity.hpp"
#include "lharq/experiment.hpp"
#include "lharq/config.hpp"
