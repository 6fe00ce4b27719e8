#pragma once

#include "toolprint/analysis.hpp"
#include "toolprint/classify.hpp"
#include "toolprint/corpus.hpp"
#include "toolprint/csv.hpp"
#include "toolprint/dataset.hpp"
#include "toolprint/error.hpp"
#include "toolprint/features.hpp"
#include "toolprint/knn.hpp"
#include "toolprint/lexicon.hpp"
#include "toolprint/metrics.hpp"
#include "toolprint/mlp.hpp"
#include "toolprint/model.hpp"
#include "toolprint/normalize.hpp"
#include "toolprint/report.hpp"
#include "toolprint/rng.hpp"
#include "toolprint/runner.hpp"
#include "toolprint/scorers.hpp"
#include "toolprint/split.hpp"
#include "toolprint/svm.hpp"
#include "toolprint/tree.hpp"
