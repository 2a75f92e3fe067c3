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

// Closed-form C-AoEI next to a short L-HARQ simulation, then one encoding run.

#include <iostream>

#include "lharq/lharq.hpp"

int main() {
    using namespace lharq;

    const IidErrorModel m{0.5, 0.2, 2};
    for (auto mode : {AoeiMode::paper_literal, AoeiMode::corrected, AoeiMode::protocol}) {
        const auto r = average_caoei(m, mode);
        std::cout << to_string(mode) << ": E{B}=" << format_number(r.e_b) << " Delta=" << format_number(r.delta_e)
                  << '\n';
    }

    HarqConfig cfg;
    cfg.max_rounds = m.K;
    HarqEngine engine(cfg, IidErrors{m.p_ff, m.p_bt}, 7);
    AoeiAccumulator acc;
    for (int i = 0; i < 200000; ++i) {
        const auto d = engine.next_departure();
        acc.add(static_cast<double>(d.interdeparture), d.backtrack_depth);
    }
    std::cout << "simulated: E{B}=" << format_number(acc.mean_b()) << " Delta=" << format_number(acc.delta_e())
              << " over " << acc.count() << " departures\n";

    EncodingSimConfig ec;
    ec.slots = 50000;
    EncodingSimulator sim(ec, 7);
    const auto r = sim.run();
    std::cout << "encoding: efficiency=" << format_number(r.efficiency()) << " pdr=" << format_number(r.pdr())
              << " age=" << format_number(r.delta_e()) << '\n';
}
