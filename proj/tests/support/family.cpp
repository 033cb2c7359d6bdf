#include "support/family.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dyadic::testing {

namespace {

struct Pair {
    std::size_t i;
    std::size_t j;
};

bool connected(std::size_t n, const std::vector<Pair>& pairs, const std::vector<int>& label) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    std::size_t components = n;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (label[p] == 0) {
            continue;
        }
        const auto a = find(pairs[p].i);
        const auto b = find(pairs[p].j);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

}  // namespace

std::vector<WeightedGraph> connected_family(std::size_t n, const std::vector<double>& weights) {
    if (n < 2 || n > 6) {
        throw std::invalid_argument("family size must be between 2 and 6 vertices");
    }
    std::vector<Pair> pairs;
    std::vector<std::vector<std::size_t>> index(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            index[i][j] = index[j][i] = pairs.size();
            pairs.push_back({i, j});
        }
    }
    // Pair-index images under every vertex permutation.
    std::vector<std::vector<std::size_t>> images;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::size_t> img(pairs.size());
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            img[p] = index[perm[pairs[p].i]][perm[pairs[p].j]];
        }
        images.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));

    const int base = static_cast<int>(weights.size()) + 1;
    std::vector<int> label(pairs.size(), 0);
    std::vector<int> permuted(pairs.size());
    std::vector<WeightedGraph> out;
    for (;;) {
        if (connected(n, pairs, label)) {
            // Keep the lexicographically largest labeling of each class.
            bool canonical = true;
            for (const auto& img : images) {
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    permuted[img[p]] = label[p];
                }
                if (std::lexicographical_compare(label.begin(), label.end(), permuted.begin(),
                                                 permuted.end())) {
                    canonical = false;
                    break;
                }
            }
            if (canonical) {
                WeightedGraph g(n);
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    if (label[p] != 0) {
                        g.add_edge(pairs[p].i, pairs[p].j,
                                   weights[static_cast<std::size_t>(label[p] - 1)]);
                    }
                }
                out.push_back(std::move(g));
            }
        }
        std::size_t pos = 0;
        while (pos < label.size() && ++label[pos] == base) {
            label[pos] = 0;
            ++pos;
        }
        if (pos == label.size()) {
            break;
        }
    }
    return out;
}

std::vector<WeightedGraph> connected_family_up_to(std::size_t max_n,
                                                  const std::vector<double>& weights) {
    std::vector<WeightedGraph> out;
    for (std::size_t n = 2; n <= max_n; ++n) {
        auto part = connected_family(n, weights);
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

}  // namespace dyadic::testing
