#pragma once

#include "csl/analysis.hpp"
#include "csl/baselines.hpp"
#include "csl/config.hpp"
#include "csl/data.hpp"
#include "csl/errors.hpp"
#include "csl/evaluation.hpp"
#include "csl/io.hpp"
#include "csl/lbfgs.hpp"
#include "csl/objectives.hpp"
#include "csl/parallel.hpp"
#include "csl/pipeline.hpp"
#include "csl/relational.hpp"
#include "csl/rng.hpp"
#include "csl/sparse.hpp"
#include "csl/synthetic.hpp"
#include "csl/tfidf.hpp"
#include "csl/tokenize.hpp"
#include "csl/train.hpp"
