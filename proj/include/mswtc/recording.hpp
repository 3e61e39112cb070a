#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mswtc {

struct SeizureInterval {
    double start_s = 0.0;
    double end_s = 0.0;
};

// Single-channel EEG time series in microvolts.
struct Recording {
    std::string subject_id;
    std::vector<double> samples;
    double fs = 0.0;
    std::vector<SeizureInterval> annotations;

    double duration_s() const {
        return fs > 0.0 ? static_cast<double>(samples.size()) / fs : 0.0;
    }
};

// Throws std::invalid_argument when fs <= 0, samples are empty, or an
// annotation falls outside [0, duration] or has start >= end.
void validate_recording(const Recording& rec);

// Fixed-duration labeled window, the unit fed to the feature extractors.
struct Segment {
    std::vector<double> samples;
    double fs = 0.0;
    int label = 0;  // 1 = seizure-dominant
    std::string subject_id;
    std::int64_t segment_id = 0;
};

}  // namespace mswtc
