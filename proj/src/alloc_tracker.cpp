// Counting allocator: global operator new/delete replacements that track
// live bytes and a resettable high-water mark. Lives in the same translation
// unit as the query functions so that linking any of them pulls the
// replacements into the binary.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <malloc.h>
#include <new>

#include "edgeboost/errors.hpp"
#include "edgeboost/profile.hpp"

namespace {

std::atomic<std::size_t> g_live_bytes{0};
std::atomic<std::size_t> g_high_water{0};
std::atomic<std::uint64_t> g_alloc_calls{0};

void track_alloc(void* p) {
    if (p == nullptr) return;
    // malloc_usable_size gives the block's real footprint, so frees need no
    // size bookkeeping of their own.
    std::size_t size = malloc_usable_size(p);
    std::size_t live = g_live_bytes.fetch_add(size, std::memory_order_relaxed) + size;
    std::size_t seen = g_high_water.load(std::memory_order_relaxed);
    while (live > seen &&
           !g_high_water.compare_exchange_weak(seen, live, std::memory_order_relaxed)) {
    }
    g_alloc_calls.fetch_add(1, std::memory_order_relaxed);
}

void track_free(void* p) {
    if (p == nullptr) return;
    g_live_bytes.fetch_sub(malloc_usable_size(p), std::memory_order_relaxed);
}

void* tracked_new(std::size_t size) {
    if (size == 0) size = 1;
    void* p = std::malloc(size);
    if (p == nullptr) throw std::bad_alloc();
    track_alloc(p);
    return p;
}

void* tracked_new_aligned(std::size_t size, std::size_t alignment) {
    if (size == 0) size = 1;
    void* p = nullptr;
    if (posix_memalign(&p, alignment, size) != 0) throw std::bad_alloc();
    track_alloc(p);
    return p;
}

}  // namespace

void* operator new(std::size_t size) { return tracked_new(size); }
void* operator new[](std::size_t size) { return tracked_new(size); }

void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
    try {
        return tracked_new(size);
    } catch (...) {
        return nullptr;
    }
}

void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
    return operator new(size, std::nothrow);
}

void* operator new(std::size_t size, std::align_val_t alignment) {
    return tracked_new_aligned(size, static_cast<std::size_t>(alignment));
}

void* operator new[](std::size_t size, std::align_val_t alignment) {
    return tracked_new_aligned(size, static_cast<std::size_t>(alignment));
}

void operator delete(void* p) noexcept {
    track_free(p);
    std::free(p);
}
void operator delete[](void* p) noexcept { operator delete(p); }
void operator delete(void* p, std::size_t) noexcept { operator delete(p); }
void operator delete[](void* p, std::size_t) noexcept { operator delete(p); }
void operator delete(void* p, std::align_val_t) noexcept { operator delete(p); }
void operator delete[](void* p, std::align_val_t) noexcept { operator delete(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept { operator delete(p); }
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept { operator delete(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { operator delete(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { operator delete(p); }

namespace edgeboost {

std::size_t tracked_live_bytes() { return g_live_bytes.load(std::memory_order_relaxed); }

bool allocation_tracking_available() {
    std::uint64_t before = g_alloc_calls.load(std::memory_order_relaxed);
    volatile char* probe = new char[64];
    probe[0] = 1;
    delete[] probe;
    return g_alloc_calls.load(std::memory_order_relaxed) != before;
}

namespace detail {

namespace {

// Concurrent allocations from other threads would pollute the high-water
// mark, so measurement requires being the only live thread.
bool sole_thread() {
    std::FILE* status = std::fopen("/proc/self/status", "r");
    if (status == nullptr) return true;  // no procfs: nothing to check against
    char line[256];
    long threads = 1;
    while (std::fgets(line, sizeof(line), status) != nullptr) {
        if (std::sscanf(line, "Threads: %ld", &threads) == 1) break;
    }
    std::fclose(status);
    return threads <= 1;
}

}  // namespace

std::size_t peak_memory_run(void (*fn)(void*), void* ctx) {
    if (!allocation_tracking_available()) {
        throw UnsupportedError(
            "allocation tracking is not installed in this binary; peak memory unavailable");
    }
    if (!sole_thread()) {
        throw UnsupportedError(
            "peak-memory measurement requires a single-threaded process");
    }
    std::size_t base = g_live_bytes.load(std::memory_order_relaxed);
    g_high_water.store(base, std::memory_order_relaxed);
    fn(ctx);
    std::size_t peak = g_high_water.load(std::memory_order_relaxed);
    return peak > base ? peak - base : 0;
}

}  // namespace detail

}  // namespace edgeboost
