#ifndef DRIFTWATCH_DRIFTWATCH_HPP
#define DRIFTWATCH_DRIFTWATCH_HPP

#include "driftwatch/bench.hpp"
#include "driftwatch/datagen.hpp"
#include "driftwatch/detector.hpp"
#include "driftwatch/kernels.hpp"
#include "driftwatch/kmeans.hpp"
#include "driftwatch/micro_cluster.hpp"
#include "driftwatch/pipeline.hpp"
#include "driftwatch/snapshot.hpp"
#include "driftwatch/stream.hpp"
#include "driftwatch/stream_io.hpp"

#endif
