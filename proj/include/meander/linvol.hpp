#pragma once

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meander/chord.hpp"

namespace meander {

// Two-row encoding of an arc-system pair as a linear involution.  Each label
// names a maximal band of parallel arcs and occurs exactly twice, both times
// in its own row; lengths are positive half-integers, stored in half-units
// (a band of k parallel arcs has length k/2).  Labels are numbered by first
// occurrence, top row first, and rendered A, B, C, ...
struct LinearInvolution {
    std::vector<int> top_word;
    std::vector<int> bottom_word;
    std::vector<int> half_lengths;  // label -> band width in half-units

    int label_count() const { return static_cast<int>(half_lengths.size()); }

    static std::string label_name(int label) {
        if (label < 26) return std::string(1, static_cast<char>('A' + label));
        return "L" + std::to_string(label);
    }

    static std::string length_string(int half_units) {
        if (half_units % 2 == 0) return std::to_string(half_units / 2);
        return std::to_string(half_units) + "/2";
    }

    // matches the two-row matrix notation:
    //   ( A, B, B, C, C, A /
    //     D, E, E, F, F, D, G, G )
    //   |A| = 1, ...
    std::string render() const {
        std::ostringstream out;
        auto row = [&](const std::vector<int>& word) {
            for (size_t i = 0; i < word.size(); ++i) {
                if (i) out << ", ";
                out << label_name(word[i]);
            }
        };
        out << "( ";
        row(top_word);
        out << " /\n  ";
        row(bottom_word);
        out << " )\n";
        for (int l = 0; l < label_count(); ++l) {
            if (l) out << ", ";
            out << "|" << label_name(l) << "| = "
                << length_string(half_lengths[static_cast<size_t>(l)]);
        }
        out << "\n";
        return out.str();
    }

    bool operator==(const LinearInvolution& o) const {
        return top_word == o.top_word && bottom_word == o.bottom_word &&
               half_lengths == o.half_lengths;
    }
};

namespace linvol_detail {

// Decomposes one arc system into maximal parallel bands and returns the row
// word (one entry per maximal run of equal band and kind) plus band widths.
// Arcs (i, j) and (i+1, j-1) are parallel; maximal chains form the bands.
inline void row_of_diagram(const ChordDiagram& d, int label_offset,
                           std::vector<int>& word, std::vector<int>& widths) {
    int m = d.points();
    std::vector<int> band_of_point(static_cast<size_t>(m), -1);
    std::vector<int> local_widths;
    for (int i = 0; i < m; ++i) {
        if (band_of_point[static_cast<size_t>(i)] >= 0 || d.partner(i) < i) continue;
        // i opens a new band: extend while directly nested
        int band = static_cast<int>(local_widths.size());
        int a = i, b = d.partner(i), width = 0;
        while (a < b && d.partner(a) == b) {
            band_of_point[static_cast<size_t>(a)] = band;
            band_of_point[static_cast<size_t>(b)] = band;
            ++width;
            ++a;
            --b;
        }
        local_widths.push_back(width);
    }
    // runs of (band, kind): each band contributes its opening run and its
    // closing run
    int prev_band = -1;
    bool prev_open = false;
    for (int i = 0; i < m; ++i) {
        int band = band_of_point[static_cast<size_t>(i)];
        bool open = d.partner(i) > i;
        if (band != prev_band || open != prev_open) {
            word.push_back(label_offset + band);
            prev_band = band;
            prev_open = open;
        }
    }
    widths = local_widths;
}

}  // namespace linvol_detail

inline LinearInvolution from_pair(const ChordDiagram& top, const ChordDiagram& bottom) {
    if (top.n() != bottom.n())
        throw std::invalid_argument("linear involution needs equal sizes");
    LinearInvolution li;
    std::vector<int> top_widths, bottom_widths;
    linvol_detail::row_of_diagram(top, 0, li.top_word, top_widths);
    linvol_detail::row_of_diagram(bottom, static_cast<int>(top_widths.size()),
                                  li.bottom_word, bottom_widths);
    li.half_lengths = top_widths;
    li.half_lengths.insert(li.half_lengths.end(), bottom_widths.begin(),
                           bottom_widths.end());

    // renumber labels by first occurrence in reading order (top row first);
    // bands are discovered by opening point, which already matches for the
    // top row, but keep the renumbering explicit
    std::vector<int> rename(li.half_lengths.size(), -1);
    int next = 0;
    auto touch = [&](int l) {
        if (rename[static_cast<size_t>(l)] < 0) rename[static_cast<size_t>(l)] = next++;
    };
    for (int l : li.top_word) touch(l);
    for (int l : li.bottom_word) touch(l);
    std::vector<int> lengths(li.half_lengths.size());
    for (size_t l = 0; l < li.half_lengths.size(); ++l)
        lengths[static_cast<size_t>(rename[l])] = li.half_lengths[l];
    for (int& l : li.top_word) l = rename[static_cast<size_t>(l)];
    for (int& l : li.bottom_word) l = rename[static_cast<size_t>(l)];
    li.half_lengths = std::move(lengths);
    return li;
}

// Expands each label back into its band of arcs.  Validation errors signal
// words that are not twin rows, non-positive lengths, unbalanced rows, or
// rows whose bands cross.
inline std::pair<ChordDiagram, ChordDiagram> to_pair(const LinearInvolution& li) {
    int labels = li.label_count();
    std::vector<int> row_of_label(static_cast<size_t>(labels), -1);
    std::vector<int> occurrences(static_cast<size_t>(labels), 0);
    auto scan = [&](const std::vector<int>& word, int row) {
        for (int l : word) {
            if (l < 0 || l >= labels)
                throw std::invalid_argument("linear involution: unknown label in word");
            if (row_of_label[static_cast<size_t>(l)] == -1)
                row_of_label[static_cast<size_t>(l)] = row;
            else if (row_of_label[static_cast<size_t>(l)] != row)
                throw std::invalid_argument(
                    "linear involution: twins must stay in one row");
            occurrences[static_cast<size_t>(l)]++;
        }
    };
    scan(li.top_word, 0);
    scan(li.bottom_word, 1);
    for (int l = 0; l < labels; ++l) {
        if (occurrences[static_cast<size_t>(l)] != 2)
            throw std::invalid_argument("linear involution: each label occurs twice");
        if (li.half_lengths[static_cast<size_t>(l)] <= 0)
            throw std::invalid_argument("linear involution: lengths must be positive");
    }
    long long top_sum = 0, bottom_sum = 0;
    for (int l : li.top_word) top_sum += li.half_lengths[static_cast<size_t>(l)];
    for (int l : li.bottom_word) bottom_sum += li.half_lengths[static_cast<size_t>(l)];
    if (top_sum != bottom_sum)
        throw std::invalid_argument("linear involution: rows have different lengths");

    auto expand = [&](const std::vector<int>& word) {
        std::vector<int> first_start(static_cast<size_t>(labels), -1);
        std::vector<std::pair<int, int>> pairs;
        int pos = 0;
        for (int l : word) {
            int w = li.half_lengths[static_cast<size_t>(l)];
            if (first_start[static_cast<size_t>(l)] < 0) {
                first_start[static_cast<size_t>(l)] = pos;
            } else {
                int s = first_start[static_cast<size_t>(l)];
                for (int c = 0; c < w; ++c) pairs.emplace_back(s + c, pos + w - 1 - c);
            }
            pos += w;
        }
        return make_chord_diagram(pairs);  // rejects crossing bands
    };
    return {expand(li.top_word), expand(li.bottom_word)};
}

}  // namespace meander
