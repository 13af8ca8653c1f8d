// SPDX-License-Identifier: Apache-2.0
//
// sscm: 3-D statistical spatial channel simulator for 28 GHz NLOS links
// Copyright (C) 2026 The sscm authors
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

#include "sscm/analysis.hpp"
#include "sscm/channel.hpp"
#include "sscm/ensemble.hpp"
#include "sscm/error.hpp"
#include "sscm/io.hpp"
#include "sscm/link_budget.hpp"
#include "sscm/params.hpp"
#include "sscm/rng.hpp"
#include "sscm/spatial.hpp"
#include "sscm/temporal.hpp"
