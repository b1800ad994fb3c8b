// Times feature extraction, serial reference against the parallel path.
#include "topoharq/extract.hpp"
#include "topoharq/synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int count = 64;
    int side = 32;
    if (argc > 1) count = std::atoi(argv[1]);
    if (argc > 2) side = std::atoi(argv[2]);
    if (count < 1 || side < 2) {
        std::fprintf(stderr, "usage: %s [count] [side]\n", argv[0]);
        return 1;
    }

    std::vector<topoharq::RgbImage> corpus =
        topoharq::make_synthetic_corpus(static_cast<std::size_t>(count), side, side, 7);
    topoharq::PipelineConfig pipeline;

    // Warm-up pass so first-touch costs do not skew the serial number.
    topoharq::extract_features(corpus[0], pipeline);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<double>> serial = topoharq::extract_corpus_serial(corpus, pipeline);
    double serial_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<double>> parallel = topoharq::extract_corpus(corpus, pipeline, 0);
    double parallel_s = seconds_since(t0);

    bool identical = serial == parallel;
    std::printf("images            %d (%dx%d)\n", count, side, side);
    std::printf("features/image    %zu\n", serial.empty() ? 0 : serial[0].size());
    std::printf("serial            %.3f s  (%.2f ms/image)\n", serial_s, 1e3 * serial_s / count);
    std::printf("parallel          %.3f s  (%.2f ms/image)\n", parallel_s, 1e3 * parallel_s / count);
    std::printf("speedup           %.2fx\n", parallel_s > 0 ? serial_s / parallel_s : 0.0);
    std::printf("outputs identical %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
