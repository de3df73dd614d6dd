#include "lidarseg/peaks.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace lidarseg {

namespace {

struct Filtration {
    const Grid<double>& img;
    int row_begin, row_end; // [row_begin, row_end)
    PersistenceOptions opt;

    std::vector<std::int64_t> position; // cell -> processing position, -1 untouched
    std::vector<std::int32_t> parent;   // union-find over processed cells
    std::vector<std::int32_t> birth_cell;

    explicit Filtration(const Grid<double>& im, int rb, int re, const PersistenceOptions& o)
        : img(im), row_begin(rb), row_end(re), opt(o),
          position(im.size(), -1), parent(im.size(), -1), birth_cell(im.size(), -1) {}

    std::int32_t find(std::int32_t c) {
        while (parent[c] != c) {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        return c;
    }

    void run(std::vector<PersistencePair>& pairs, double survivor_death) {
        const int cols = img.cols();
        struct Cell {
            double value;
            std::int32_t idx;
        };
        std::vector<Cell> order;
        for (int r = row_begin; r < row_end; ++r)
            for (int c = 0; c < cols; ++c)
                if (img(r, c) > 0.0)
                    order.push_back({img(r, c), static_cast<std::int32_t>(r * cols + c)});
        // Decreasing intensity; ties by (row, col), i.e. by linear index.
        std::sort(order.begin(), order.end(), [](const Cell& a, const Cell& b) {
            if (a.value != b.value) return a.value > b.value;
            return a.idx < b.idx;
        });

        std::vector<std::int32_t> neigh;
        neigh.reserve(8);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            const std::int32_t idx = order[pos].idx;
            const double v = order[pos].value;
            position[idx] = static_cast<std::int64_t>(pos);
            parent[idx] = idx;
            birth_cell[idx] = idx;

            neighbors(idx, neigh);
            for (std::int32_t n : neigh) {
                if (position[n] < 0) continue; // not yet in the superlevel set
                std::int32_t ra = find(idx);
                std::int32_t rb = find(n);
                if (ra == rb) continue;
                // Elder rule: the component whose birth came later dies here.
                if (position[birth_cell[ra]] > position[birth_cell[rb]]) std::swap(ra, rb);
                std::int32_t dying = birth_cell[rb];
                double birth = img(dying / cols, dying % cols);
                if (birth > v) // plateau merges (birth == v) are not features
                    pairs.push_back({birth, v, dying / cols, dying % cols});
                parent[rb] = ra;
            }
        }

        // Never-merged components persist down to the grid minimum.
        for (const Cell& cell : order) {
            std::int32_t root = find(cell.idx);
            if (birth_cell[root] == cell.idx) {
                double birth = img(cell.idx / cols, cell.idx % cols);
                pairs.push_back({birth, survivor_death, cell.idx / cols, cell.idx % cols});
            }
        }
    }

    void neighbors(std::int32_t idx, std::vector<std::int32_t>& out) const {
        const int cols = img.cols();
        const int r = idx / cols;
        const int c = idx % cols;
        out.clear();
        auto push = [&](int rr, int cc) {
            if (rr < row_begin || rr >= row_end) return;
            if (cc < 0 || cc >= cols) {
                if (!opt.wrap_columns) return;
                cc = (cc + cols) % cols;
                if (cc == c) return; // width <= 2 would alias the cell itself
            }
            out.push_back(static_cast<std::int32_t>(rr * cols + cc));
        };
        push(r - 1, c);
        push(r + 1, c);
        push(r, c - 1);
        push(r, c + 1);
        if (opt.connectivity == 8) {
            push(r - 1, c - 1);
            push(r - 1, c + 1);
            push(r + 1, c - 1);
            push(r + 1, c + 1);
        }
    }
};

void sort_pairs(std::vector<PersistencePair>& pairs) {
    std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
        double pa = a.persistence(), pb = b.persistence();
        if (pa != pb) return pa > pb;
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });
}

} // namespace

Barcode persistence_maxima(const Grid<double>& img, const PersistenceOptions& opt) {
    bool any_positive = false;
    double vmax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    for (double v : img.data()) {
        vmin = std::min(vmin, v);
        if (v > 0.0) {
            any_positive = true;
            vmax = std::max(vmax, v);
        }
    }
    if (!any_positive)
        throw EmptyImageError();

    Barcode bc;
    bc.global_max = vmax;
    bc.global_min = vmin;

    if (!opt.per_row) {
        Filtration f(img, 0, img.rows(), opt);
        f.run(bc.pairs, vmin);
    } else {
        for (int r = 0; r < img.rows(); ++r) {
            double row_min = std::numeric_limits<double>::infinity();
            bool row_positive = false;
            for (int c = 0; c < img.cols(); ++c) {
                row_min = std::min(row_min, img(r, c));
                row_positive = row_positive || img(r, c) > 0.0;
            }
            if (!row_positive) continue;
            Filtration f(img, r, r + 1, opt);
            f.run(bc.pairs, row_min);
        }
    }
    sort_pairs(bc.pairs);
    return bc;
}

Barcode filter_barcode(const Barcode& bc, double fraction) {
    Barcode out;
    out.global_max = bc.global_max;
    out.global_min = bc.global_min;
    const double cutoff = fraction * bc.span();
    for (const PersistencePair& p : bc.pairs)
        if (p.persistence() >= cutoff)
            out.pairs.push_back(p);
    return out;
}

std::vector<Pixel> maxima_locations(const Barcode& bc) {
    std::vector<Pixel> locs;
    locs.reserve(bc.pairs.size());
    for (const PersistencePair& p : bc.pairs) locs.push_back({p.row, p.col});
    std::sort(locs.begin(), locs.end());
    return locs;
}

} // namespace lidarseg
