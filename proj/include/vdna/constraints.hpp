#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vdna/error.hpp"

// Biochemical sequence constraints: homopolymer runs, GC content and tandem
// pattern repeats. All checks are pure functions over the input sequence.

namespace vdna {

enum class ViolationKind { Homopolymer, GcContent, PatternRepeat, Length };

inline const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::Homopolymer: return "homopolymer";
    case ViolationKind::GcContent: return "gc-content";
    case ViolationKind::PatternRepeat: return "pattern-repeat";
    case ViolationKind::Length: return "length";
    }
    return "unknown";
}

struct PatternRule {
    std::size_t pattern_length;
    std::size_t max_consecutive_repeats;
};

struct ConstraintPolicy {
    // Longest allowed run of identical nucleotides; runs of max+1 are rejected.
    std::size_t max_homopolymer_run = 3;
    double gc_min = 0.40;
    double gc_max = 0.50;
    std::vector<PatternRule> pattern_rules = default_pattern_rules();

    static std::vector<PatternRule> default_pattern_rules() {
        return {{3, 2}, {4, 2}, {5, 2}, {6, 3}, {7, 3}};
    }

    // Filter applied by the encoder to every candidate oligo.
    static ConstraintPolicy encoder_default() { return {}; }

    // Wider GC band used by the standalone verifier.
    static ConstraintPolicy verifier_default() {
        ConstraintPolicy p;
        p.gc_max = 0.60;
        return p;
    }
};

struct Violation {
    ViolationKind kind;
    std::size_t position;  // 0-based
    std::string detail;
};

struct ViolationReport {
    std::vector<Violation> violations;
    double gc_ratio = 0.0;

    bool accepted() const { return violations.empty(); }
};

inline bool is_nucleotide(char ch) {
    return ch == 'A' || ch == 'C' || ch == 'G' || ch == 'T';
}

inline void require_valid_alphabet(std::string_view seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!is_nucleotide(seq[i])) {
            throw MalformedSequenceError("invalid nucleotide '" + std::string(1, seq[i]) +
                                         "' at position " + std::to_string(i));
        }
    }
}

// One violation per maximal run of identical nucleotides longer than max_run.
inline std::vector<Violation> check_homopolymers(std::string_view seq, std::size_t max_run) {
    require_valid_alphabet(seq);
    std::vector<Violation> out;
    std::size_t i = 0;
    while (i < seq.size()) {
        std::size_t j = i + 1;
        while (j < seq.size() && seq[j] == seq[i]) ++j;
        const std::size_t run = j - i;
        if (run > max_run) {
            out.push_back({ViolationKind::Homopolymer, i,
                           "run of " + std::to_string(run) + " '" + std::string(1, seq[i]) +
                               "' exceeds " + std::to_string(max_run)});
        }
        i = j;
    }
    return out;
}

inline std::pair<double, std::optional<Violation>> check_gc(std::string_view seq, double gc_min,
                                                            double gc_max) {
    if (seq.empty()) {
        throw MalformedSequenceError("GC content undefined for an empty sequence");
    }
    require_valid_alphabet(seq);
    std::size_t gc = 0;
    for (char ch : seq) {
        if (ch == 'G' || ch == 'C') ++gc;
    }
    const double ratio = static_cast<double>(gc) / static_cast<double>(seq.size());
    std::optional<Violation> violation;
    if (ratio < gc_min || ratio > gc_max) {
        violation = Violation{ViolationKind::GcContent, 0,
                              "GC ratio " + std::to_string(ratio) + " outside [" +
                                  std::to_string(gc_min) + ", " + std::to_string(gc_max) + "]"};
    }
    return {ratio, violation};
}

// Tandem repeats: a p-nt pattern occurring more than the allowed number of
// times in immediate succession. Only the leftmost start of each tandem run
// is reported; starts that merely continue a run one period to the left are
// its suffixes and are skipped.
inline std::vector<Violation> check_patterns(std::string_view seq,
                                             const std::vector<PatternRule>& rules) {
    require_valid_alphabet(seq);
    std::vector<Violation> out;
    for (const PatternRule& rule : rules) {
        const std::size_t p = rule.pattern_length;
        if (p == 0 || seq.size() < 2 * p) continue;
        for (std::size_t i = 0; i + 2 * p <= seq.size(); ++i) {
            if (i >= p && seq.substr(i - p, p) == seq.substr(i, p)) continue;
            const std::string_view pattern = seq.substr(i, p);
            std::size_t repeats = 1;
            while (i + (repeats + 1) * p <= seq.size() &&
                   seq.substr(i + repeats * p, p) == pattern) {
                ++repeats;
            }
            if (repeats > rule.max_consecutive_repeats) {
                out.push_back({ViolationKind::PatternRepeat, i,
                               "pattern '" + std::string(pattern) + "' repeated " +
                                   std::to_string(repeats) + " times (max " +
                                   std::to_string(rule.max_consecutive_repeats) + ")"});
            }
        }
    }
    return out;
}

inline ViolationReport validate_oligo(std::string_view seq, const ConstraintPolicy& policy,
                                      std::optional<std::size_t> expected_length = {}) {
    ViolationReport report;
    auto homo = check_homopolymers(seq, policy.max_homopolymer_run);
    report.violations.insert(report.violations.end(), homo.begin(), homo.end());
    auto [ratio, gc_violation] = check_gc(seq, policy.gc_min, policy.gc_max);
    report.gc_ratio = ratio;
    if (gc_violation) report.violations.push_back(*gc_violation);
    auto patterns = check_patterns(seq, policy.pattern_rules);
    report.violations.insert(report.violations.end(), patterns.begin(), patterns.end());
    if (expected_length && seq.size() != *expected_length) {
        report.violations.push_back({ViolationKind::Length, 0,
                                     "length " + std::to_string(seq.size()) + ", expected " +
                                         std::to_string(*expected_length)});
    }
    return report;
}

}  // namespace vdna
