"""
Example usage of the refined absorption tools.
"""

import logging.config

from refined_absorption.absorber import (
    build_absorber,
    build_omni_absorber_exhaustive,
    verify_absorber
)
from refined_absorption.config import settings
from refined_absorption.core.generators import complete_graph, cycle_graph
from refined_absorption.core.models import DensityVector
from refined_absorption.fractional import boost_regularity, fractional_decompose
from refined_absorption.gadgets import build_booster, verify_booster
from refined_absorption.pipeline import decompose, report
from refined_absorption.turan import TuranProbe

# Setup logging
logging.config.dictConfig(settings.LOGGING)
logger = logging.getLogger(__name__)

def main():
    output_base = settings.DATA_DIR / "example_results"

    # A booster for the triangle
    logger.info("Building a booster for K_3^2...")
    booster = build_booster([0, 1, 2], 2)
    logger.info("Booster checks: %s", verify_booster(booster, 2))

    # An absorber for the 6-cycle
    logger.info("Building an absorber for C_6...")
    absorber = build_absorber(cycle_graph(6), 3)
    logger.info("Absorber report: %s", verify_absorber(absorber).to_dict())

    # An omni-absorber for a small reserve graph
    logger.info("Building an omni-absorber for K_4...")
    omni = build_omni_absorber_exhaustive(complete_graph(4, 2), 3)
    logger.info("Omni-absorber checks passed: %s", all(omni.verify().values()))
    omni.export_analysis(str(output_base))

    # A boosted fractional family on K_9
    logger.info("Solving a fractional decomposition of K_9...")
    host = complete_graph(9, 2)
    psi = fractional_decompose(host, 3)
    family, regularity = boost_regularity(host, psi, seed=settings.DEFAULT_SEED)
    logger.info("Boosted family has %d cliques", len(family))
    regularity.export_analysis(str(output_base))

    # Triangles in random hosts of edge density 1/2
    probe = TuranProbe(complete_graph(3, 2), DensityVector([0, "1/2"]), 10)
    probe.run(trials=20, seed=settings.DEFAULT_SEED)
    probe.export_analysis(str(output_base))

    # The full finishing pipeline
    logger.info("Running the pipeline on K_9...")
    found, trace = decompose(host, 3, seed=settings.DEFAULT_SEED)
    text, _ = report(trace)
    print(text)
    trace.export_analysis(str(output_base))

    logger.info("Example complete! Results saved to %s", output_base)

if __name__ == "__main__":
    main()
