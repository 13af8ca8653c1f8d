// SPDX-License-Identifier: Apache-2.0
//
// Generates one channel with the default 28 GHz NLOS parameters and prints
// its impulse response and headline statistics.

#include <iostream>

#include "sscm/sscm.hpp"

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 2026;
    const sscm::ModelParams params;
    const auto ch = sscm::generate_channel(params, seed, 0);

    std::cout << "d = " << ch.link.distance_m << " m, PL = " << ch.link.path_loss_db
              << " dB, Pr = " << ch.link.omni_rx_power_dbm << " dBm\n";
    std::cout << ch.clusters.size() << " clusters, " << ch.aod_lobes.size() << " AOD lobes, "
              << ch.aoa_lobes.size() << " AOA lobes\n\n";
    std::cout << "t_ns\tpower_mw\tphase_rad\tAOD(az,el)\tAOA(az,el)\n";
    for (const auto& t : sscm::impulse_response(ch)) {
        std::cout << t.time_ns << '\t' << t.power_mw << '\t' << t.phase_rad << "\t(" << t.aod_azimuth_deg << ','
                  << t.aod_elevation_deg << ")\t(" << t.aoa_azimuth_deg << ',' << t.aoa_elevation_deg << ")\n";
    }
    const auto pdp = sscm::synthesize_pdp(ch);
    std::cout << "\nRMS delay spread: " << sscm::rms_delay_spread(pdp) << " ns\n";
    for (const auto& lobe : sscm::threshold_lobes(sscm::assemble_spectrum(ch, sscm::Side::Aoa))) {
        const auto s = sscm::rms_lobe_angular_spread(lobe);
        std::cout << "AOA lobe: " << lobe.cells.size() << " cells, RMS spread az " << s.azimuth_deg << " deg, el "
                  << s.elevation_deg << " deg\n";
    }
}
