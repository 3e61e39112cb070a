#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mswtc/recording.hpp"

namespace mswtc {

inline constexpr double kBonnSampleRateHz = 173.61;
inline constexpr std::size_t kBonnSamplesPerRecording = 4096;

// Bonn corpus on disk: <root>/{Z,O,N,F,S}/*.txt, ASCII integers one per line.
// On-disk set names map to the conventional letters A..E:
//   Z->A, O->B, N->C, F->D, S->E.
// Throws std::runtime_error on a missing set directory, a file whose sample
// count differs from 4096 (message names the file), or a non-numeric line.
std::map<char, std::vector<Recording>> load_bonn_corpus(const std::filesystem::path& root);

// Generic recording pair: <name>.txt (one sample per line) plus
// <name>.manifest with key=value lines: fs, subject_id, and zero or more
// seizure=<start_s>,<end_s> entries.
Recording load_generic_recording(const std::filesystem::path& txt_path);
void save_generic_recording(const Recording& rec, const std::filesystem::path& txt_path);

// Loads every *.txt with a sibling .manifest under dir, sorted by filename.
std::vector<Recording> load_generic_corpus(const std::filesystem::path& dir);

// CSV with header start_s,end_s
void export_annotations_csv(const Recording& rec, const std::filesystem::path& path);

// Cuts [t, t+window_s) windows at t = 0, hop_s, 2*hop_s, ... while a full
// window fits. A window is labeled 1 iff its overlap with any seizure
// interval is at least seizure_threshold * window_s.
std::vector<Segment> segment_recording(const Recording& rec, double window_s, double hop_s,
                                       double seizure_threshold = 0.5);

struct BonnCase {
    int case_id = 0;
    std::vector<char> seizure_sets;
    std::vector<char> nonseizure_sets;
};

// The seven standard set pairings; seizure side is always E.
BonnCase bonn_case(int case_id);

// Whole 23.6 s Bonn records as segments, E labeled 1 and the case's
// non-seizure sets labeled 0. No sub-windowing.
std::vector<Segment> build_case(int case_id, const std::map<char, std::vector<Recording>>& corpus);

enum class Scenario { Mixed, Separated };

struct SplitPlan {
    Scenario scenario = Scenario::Mixed;
    double train_fraction = 0.7;
    int repeats = 100;
    std::uint64_t seed = 0;
    bool balance = true;
};

struct Split {
    std::vector<std::size_t> train_ids;
    std::vector<std::size_t> test_ids;
};

// One split per repeat, each drawn from an independent seed-derived stream.
// Mixed: optional majority undersampling to the minority count, then a
// per-class train_fraction split. Separated: whole subjects go to the test
// side (6 of 19 when 19 subjects are present, otherwise round(6/19 * n),
// at least 1), with the same optional per-side balancing.
// Throws std::runtime_error when a class cannot be represented on both sides
// after a bounded number of redraws, or when the separated scenario is asked
// of segments with fewer than 2 distinct subject ids.
std::vector<Split> make_splits(const std::vector<Segment>& segments, const SplitPlan& plan);

// Order-sensitive digest of a split sequence; equal digests across methods
// certify that the same splits were reused.
std::uint64_t split_digest(const std::vector<Split>& splits);

}  // namespace mswtc
