#pragma once

#include "advrank/baseline.hpp"
#include "advrank/drr.hpp"
#include "advrank/error.hpp"
#include "advrank/fixtures.hpp"
#include "advrank/harness.hpp"
#include "advrank/io.hpp"
#include "advrank/ndcg.hpp"
#include "advrank/prediction.hpp"
#include "advrank/ranking.hpp"
#include "advrank/worked_example.hpp"
