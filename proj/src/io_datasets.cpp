#include "mswtc/io_datasets.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mswtc/rng.hpp"

namespace fs = std::filesystem;

namespace mswtc {

void validate_recording(const Recording& rec) {
    if (rec.fs <= 0.0) throw std::invalid_argument("recording: fs must be positive");
    if (rec.samples.empty()) throw std::invalid_argument("recording: samples are empty");
    const double dur = rec.duration_s();
    for (const auto& iv : rec.annotations) {
        if (!(iv.start_s >= 0.0 && iv.start_s < iv.end_s && iv.end_s <= dur + 1e-9)) {
            throw std::invalid_argument("recording: annotation outside [0, duration] or start >= end");
        }
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, const fs::path& file, std::size_t line_no) {
    const char* begin = token.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) {
        std::ostringstream oss;
        oss << file.string() << ":" << line_no << ": non-numeric line '" << token << "'";
        throw std::runtime_error(oss.str());
    }
    return v;
}

std::vector<double> read_sample_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<double> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        samples.push_back(parse_number(t, path, line_no));
    }
    return samples;
}

}  // namespace

std::map<char, std::vector<Recording>> load_bonn_corpus(const fs::path& root) {
    static const std::pair<const char*, char> kSets[] = {
        {"Z", 'A'}, {"O", 'B'}, {"N", 'C'}, {"F", 'D'}, {"S", 'E'}};

    std::map<char, std::vector<Recording>> corpus;
    for (const auto& [dir_name, letter] : kSets) {
        fs::path set_dir = root / dir_name;
        if (!fs::is_directory(set_dir)) {
            throw std::runtime_error("missing set directory " + set_dir.string() +
                                     " (expected <root>/{Z,O,N,F,S})");
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(set_dir)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        if (files.empty()) throw std::runtime_error("missing set: no files in " + set_dir.string());
        std::sort(files.begin(), files.end());

        std::vector<Recording>& recs = corpus[letter];
        recs.reserve(files.size());
        for (const auto& file : files) {
            Recording rec;
            rec.samples = read_sample_file(file);
            if (rec.samples.size() != kBonnSamplesPerRecording) {
                std::ostringstream oss;
                oss << file.string() << ": expected " << kBonnSamplesPerRecording
                    << " samples, found " << rec.samples.size();
                throw std::runtime_error(oss.str());
            }
            rec.fs = kBonnSampleRateHz;
            rec.subject_id = file.stem().string();
            recs.push_back(std::move(rec));
        }
    }
    return corpus;
}

Recording load_generic_recording(const fs::path& txt_path) {
    Recording rec;
    rec.samples = read_sample_file(txt_path);

    fs::path manifest = txt_path;
    manifest.replace_extension(".manifest");
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());

    rec.subject_id = txt_path.stem().string();
    std::string line;
    std::size_t line_no = 0;
    bool have_fs = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(manifest.string() + ": expected key=value, got '" + t + "'");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key == "fs") {
            rec.fs = parse_number(value, manifest, line_no);
            have_fs = true;
        } else if (key == "subject_id") {
            rec.subject_id = value;
        } else if (key == "seizure") {
            std::size_t comma = value.find(',');
            if (comma == std::string::npos) {
                throw std::runtime_error(manifest.string() + ": seizure needs <start_s>,<end_s>");
            }
            SeizureInterval iv;
            iv.start_s = parse_number(trim(value.substr(0, comma)), manifest, line_no);
            iv.end_s = parse_number(trim(value.substr(comma + 1)), manifest, line_no);
            rec.annotations.push_back(iv);
        } else {
            throw std::runtime_error(manifest.string() + ": unknown key '" + key + "'");
        }
    }
    if (!have_fs) throw std::runtime_error(manifest.string() + ": missing fs");
    validate_recording(rec);
    return rec;
}

void save_generic_recording(const Recording& rec, const fs::path& txt_path) {
    {
        std::ofstream out(txt_path);
        if (!out) throw std::runtime_error("cannot write " + txt_path.string());
        char buf[64];
        for (double v : rec.samples) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", v);
            out << buf;
        }
    }
    fs::path manifest = txt_path;
    manifest.replace_extension(".manifest");
    std::ofstream out(manifest);
    if (!out) throw std::runtime_error("cannot write " + manifest.string());
    char buf[128];
    std::snprintf(buf, sizeof(buf), "fs=%.17g\n", rec.fs);
    out << buf;
    out << "subject_id=" << rec.subject_id << "\n";
    for (const auto& iv : rec.annotations) {
        std::snprintf(buf, sizeof(buf), "seizure=%.17g,%.17g\n", iv.start_s, iv.end_s);
        out << buf;
    }
}

std::vector<Recording> load_generic_corpus(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            fs::path manifest = entry.path();
            manifest.replace_extension(".manifest");
            if (fs::exists(manifest)) files.push_back(entry.path());
        }
    }
    if (files.empty()) throw std::runtime_error("no <name>.txt + <name>.manifest pairs in " + dir.string());
    std::sort(files.begin(), files.end());
    std::vector<Recording> recs;
    recs.reserve(files.size());
    for (const auto& f : files) recs.push_back(load_generic_recording(f));
    return recs;
}

void export_annotations_csv(const Recording& rec, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "start_s,end_s\n";
    char buf[80];
    for (const auto& iv : rec.annotations) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", iv.start_s, iv.end_s);
        out << buf;
    }
}

std::vector<Segment> segment_recording(const Recording& rec, double window_s, double hop_s,
                                       double seizure_threshold) {
    validate_recording(rec);
    if (hop_s <= 0.0) throw std::invalid_argument("segment_recording: hop_s must be positive");
    const auto window_n = static_cast<std::size_t>(std::llround(window_s * rec.fs));
    const auto hop_n = static_cast<std::size_t>(std::llround(hop_s * rec.fs));
    if (window_n == 0 || hop_n == 0) throw std::invalid_argument("segment_recording: window/hop too small");
    if (window_n > rec.samples.size()) {
        throw std::invalid_argument("segment_recording: window longer than recording");
    }

    std::vector<Segment> segments;
    std::int64_t id = 0;
    for (std::size_t start = 0; start + window_n <= rec.samples.size(); start += hop_n) {
        Segment seg;
        seg.samples.assign(rec.samples.begin() + static_cast<std::ptrdiff_t>(start),
                           rec.samples.begin() + static_cast<std::ptrdiff_t>(start + window_n));
        seg.fs = rec.fs;
        seg.subject_id = rec.subject_id;
        seg.segment_id = id++;

        const double t0 = static_cast<double>(start) / rec.fs;
        const double t1 = t0 + window_s;
        double max_overlap = 0.0;
        for (const auto& iv : rec.annotations) {
            double ov = std::min(t1, iv.end_s) - std::max(t0, iv.start_s);
            max_overlap = std::max(max_overlap, ov);
        }
        seg.label = (max_overlap > 0.0 && max_overlap >= seizure_threshold * window_s) ? 1 : 0;
        segments.push_back(std::move(seg));
    }
    return segments;
}

BonnCase bonn_case(int case_id) {
    static const std::vector<std::vector<char>> kNonSeizure = {
        {'A'}, {'B'}, {'C'}, {'D'}, {'A', 'C', 'D'}, {'B', 'C', 'D'}, {'A', 'B', 'C', 'D'}};
    if (case_id < 1 || case_id > 7) {
        throw std::invalid_argument("bonn case id must be in 1..7, got " + std::to_string(case_id));
    }
    BonnCase c;
    c.case_id = case_id;
    c.seizure_sets = {'E'};
    c.nonseizure_sets = kNonSeizure[static_cast<std::size_t>(case_id - 1)];
    return c;
}

std::vector<Segment> build_case(int case_id, const std::map<char, std::vector<Recording>>& corpus) {
    const BonnCase c = bonn_case(case_id);
    std::vector<Segment> segments;
    std::int64_t id = 0;

    auto append_set = [&](char letter, int label) {
        auto it = corpus.find(letter);
        if (it == corpus.end()) throw std::runtime_error(std::string("corpus lacks set ") + letter);
        for (const auto& rec : it->second) {
            Segment seg;
            seg.samples = rec.samples;
            seg.fs = rec.fs;
            seg.label = label;
            seg.subject_id = "";  // Bonn provides no subject metadata
            seg.segment_id = id++;
            segments.push_back(std::move(seg));
        }
    };

    for (char letter : c.seizure_sets) append_set(letter, 1);
    for (char letter : c.nonseizure_sets) append_set(letter, 0);
    return segments;
}

namespace {

constexpr int kMaxRedraws = 20;

bool both_classes(const std::vector<std::size_t>& ids, const std::vector<int>& labels) {
    bool pos = false, neg = false;
    for (std::size_t i : ids) {
        (labels[i] == 1 ? pos : neg) = true;
        if (pos && neg) return true;
    }
    return false;
}

// Undersamples the majority class among `ids` to the minority count.
std::vector<std::size_t> balance_ids(const std::vector<std::size_t>& ids,
                                     const std::vector<int>& labels, Rng& rng) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i : ids) (labels[i] == 1 ? pos : neg).push_back(i);
    const std::size_t keep = std::min(pos.size(), neg.size());
    auto take = [&](std::vector<std::size_t>& cls) {
        if (cls.size() > keep) {
            auto sel = rng.sample_without_replacement(cls.size(), keep);
            std::vector<std::size_t> kept;
            kept.reserve(keep);
            for (std::size_t s : sel) kept.push_back(cls[s]);
            cls = std::move(kept);
        }
    };
    take(pos);
    take(neg);
    std::vector<std::size_t> out;
    out.reserve(pos.size() + neg.size());
    out.insert(out.end(), pos.begin(), pos.end());
    out.insert(out.end(), neg.begin(), neg.end());
    std::sort(out.begin(), out.end());
    return out;
}

Split draw_mixed_split(const std::vector<int>& labels, const SplitPlan& plan, Rng& rng) {
    std::vector<std::size_t> all(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) all[i] = i;
    std::vector<std::size_t> pool = plan.balance ? balance_ids(all, labels, rng) : all;

    // per-class split so the train fraction holds within each class
    std::vector<std::size_t> pos, neg;
    for (std::size_t i : pool) (labels[i] == 1 ? pos : neg).push_back(i);

    Split split;
    auto split_class = [&](std::vector<std::size_t>& cls) {
        rng.shuffle(cls);
        const auto train_n = static_cast<std::size_t>(
            std::llround(plan.train_fraction * static_cast<double>(cls.size())));
        for (std::size_t i = 0; i < cls.size(); ++i) {
            (i < train_n ? split.train_ids : split.test_ids).push_back(cls[i]);
        }
    };
    split_class(pos);
    split_class(neg);
    std::sort(split.train_ids.begin(), split.train_ids.end());
    std::sort(split.test_ids.begin(), split.test_ids.end());
    return split;
}

Split draw_separated_split(const std::vector<Segment>& segments, const std::vector<int>& labels,
                           const SplitPlan& plan, Rng& rng) {
    std::vector<std::string> subjects;
    std::unordered_map<std::string, std::vector<std::size_t>> by_subject;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const std::string& s = segments[i].subject_id;
        if (s.empty()) {
            throw std::runtime_error(
                "separated scenario: segments lack subject metadata "
                "(the Bonn corpus has none; use a generic or synthetic corpus)");
        }
        auto [it, inserted] = by_subject.try_emplace(s);
        if (inserted) subjects.push_back(s);
        it->second.push_back(i);
    }
    std::sort(subjects.begin(), subjects.end());
    const std::size_t n_subj = subjects.size();
    if (n_subj < 2) {
        throw std::runtime_error("separated scenario requires at least 2 distinct subject ids");
    }
    std::size_t n_test = (n_subj == 19)
                             ? 6
                             : static_cast<std::size_t>(std::llround(6.0 / 19.0 * static_cast<double>(n_subj)));
    n_test = std::clamp<std::size_t>(n_test, 1, n_subj - 1);

    auto sel = rng.sample_without_replacement(n_subj, n_test);
    std::set<std::string> test_subjects;
    for (std::size_t s : sel) test_subjects.insert(subjects[s]);

    Split split;
    for (const auto& subj : subjects) {
        auto& dst = test_subjects.count(subj) ? split.test_ids : split.train_ids;
        const auto& ids = by_subject[subj];
        dst.insert(dst.end(), ids.begin(), ids.end());
    }
    if (plan.balance) {
        split.train_ids = balance_ids(split.train_ids, labels, rng);
        split.test_ids = balance_ids(split.test_ids, labels, rng);
    }
    std::sort(split.train_ids.begin(), split.train_ids.end());
    std::sort(split.test_ids.begin(), split.test_ids.end());
    return split;
}

}  // namespace

std::vector<Split> make_splits(const std::vector<Segment>& segments, const SplitPlan& plan) {
    if (segments.empty()) throw std::invalid_argument("make_splits: no segments");
    if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
        throw std::invalid_argument("make_splits: train_fraction must be in (0,1)");
    }
    if (plan.repeats < 1) throw std::invalid_argument("make_splits: repeats must be >= 1");

    std::vector<int> labels(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i) labels[i] = segments[i].label;

    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(plan.repeats));
    for (int r = 0; r < plan.repeats; ++r) {
        Split split;
        bool ok = false;
        for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
            Rng rng = derive_stream(plan.seed, "split",
                                    static_cast<std::uint64_t>(r) * 1000 + static_cast<std::uint64_t>(attempt));
            split = plan.scenario == Scenario::Mixed
                        ? draw_mixed_split(labels, plan, rng)
                        : draw_separated_split(segments, labels, plan, rng);
            ok = !split.train_ids.empty() && !split.test_ids.empty() &&
                 both_classes(split.train_ids, labels) && both_classes(split.test_ids, labels);
        }
        if (!ok) {
            throw std::runtime_error("make_splits: repeat " + std::to_string(r) +
                                     ": could not draw a split with both classes on both sides");
        }
        splits.push_back(std::move(split));
    }
    return splits;
}

std::uint64_t split_digest(const std::vector<Split>& splits) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    };
    mix(splits.size());
    for (const auto& s : splits) {
        mix(s.train_ids.size());
        for (std::size_t i : s.train_ids) mix(i);
        mix(s.test_ids.size());
        for (std::size_t i : s.test_ids) mix(i);
    }
    return h;
}

}  // namespace mswtc
