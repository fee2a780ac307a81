"""
Mutation fuzzing of certificate documents
Every mutation changes something the Adjudicator checks, so a sound verifier
rejects all of them.
"""

import copy
import logging
import random
from typing import Any, Callable, Dict, List, Optional, Tuple

from lib.errors import MalformedCertificate
from matroids.oracle import CountedOracle
from protocol.adjudicator import load_certificate, verify

logger = logging.getLogger(__name__)

Document = Dict[str, Any]


def _attestations(document: Document) -> List[Dict[str, Any]]:
    found = []
    for level in document.get("levels", []):
        found.extend(level.get("guard", []))
        for block in level.get("evidence", []):
            for link in block.get("chain", []):
                found.extend(link["attestations"])
            found.extend(block.get("witness_attestations", []))
            found.extend(point["fault"] for point in block.get("points", []) if "fault" in point)
    return found


def bump_attestation(document: Document, rng: random.Random) -> Optional[str]:
    attestations = _attestations(document)
    if not attestations:
        return None
    target = rng.choice(attestations)
    target["rank"] += 1
    return f"rank of {target['subset']} raised to {target['rank']}"


def drop_point(document: Document, rng: random.Random) -> Optional[str]:
    blocks = [b for level in document["levels"] for b in level["evidence"] if b.get("points")]
    if not blocks:
        return None
    block = rng.choice(blocks)
    removed = block["points"].pop(rng.randrange(len(block["points"])))
    return f"point {removed['point']} dropped"


def drop_level(document: Document, rng: random.Random) -> Optional[str]:
    if not document["levels"]:
        return None
    index = rng.randrange(len(document["levels"]))
    document["levels"].pop(index)
    return f"level {index + 1} dropped"


def declare_top_rep(document: Document, rng: random.Random) -> Optional[str]:
    levels = [level for level in document["levels"] if level["reps"]]
    if not levels or not document["levels"]:
        return None
    document["levels"][-1]["reps"].append(copy.deepcopy(rng.choice(levels)["reps"][0]))
    return "representation added to the top level"


def duplicate_source(document: Document, rng: random.Random) -> Optional[str]:
    levels = [level for level in document["levels"] if level["evidence"]]
    if not levels:
        return None
    level = rng.choice(levels)
    level["evidence"].append(copy.deepcopy(level["evidence"][0]))
    return "evidence block duplicated"


def swap_labels(document: Document, rng: random.Random) -> Optional[str]:
    labels = document["labels"]
    if len(labels) < 2:
        return None
    i, j = rng.sample(range(len(labels)), 2)
    labels[i], labels[j] = labels[j], labels[i]
    return f"labels {labels[j]} and {labels[i]} swapped"


def shrink_chain_flat(document: Document, rng: random.Random) -> Optional[str]:
    links = [link for level in document["levels"] for b in level["evidence"] for link in b.get("chain", [])]
    if not links:
        return None
    link = rng.choice(links)
    basis = link["flat"]["basis"]
    rank = link["flat"]["ambient_rank"]
    basis.update(rows=rank, cols=rank, entries=[[int(i == j) for j in range(rank)] for i in range(rank)])
    return f"flat of {link['subset']} replaced by the whole space"


def fault_subset_without_element(document: Document, rng: random.Random) -> Optional[str]:
    faults = []
    for level, step in zip(document["levels"], document["chain"]):
        for block in level["evidence"]:
            for point in block.get("points", []):
                if "fault" in point:
                    faults.append((point["fault"], step["element"]))
    if not faults:
        return None
    fault, element = rng.choice(faults)
    fault["subset"] = [x for x in fault["subset"] if x != element]
    return f"{element} removed from a fault set"


def change_field(document: Document, rng: random.Random) -> Optional[str]:
    choices = [q for q in (2, 3, 5, 7) if q != document["p"]]
    document["p"] = rng.choice(choices)
    return f"field changed to GF({document['p']})"


MUTATIONS: List[Callable[[Document, random.Random], Optional[str]]] = [
    bump_attestation,
    drop_point,
    drop_level,
    declare_top_rep,
    duplicate_source,
    swap_labels,
    shrink_chain_flat,
    fault_subset_without_element,
    change_field,
]


def mutate_certificate(document: Document, rng: random.Random) -> Tuple[str, Document]:
    """Apply one applicable mutation to a copy of the document"""
    order = list(MUTATIONS)
    rng.shuffle(order)
    for mutation in order:
        mutated = copy.deepcopy(document)
        description = mutation(mutated, rng)
        if description is not None:
            return description, mutated
    raise ValueError("No mutation applies to this document")


def fuzz_certificate(oracle: CountedOracle, document: Document, rounds: int, seed: int) -> Dict[str, Any]:
    """Verify `rounds` mutated copies; every one should be rejected"""
    rng = random.Random(seed)
    accepted: List[str] = []
    malformed = 0
    for _ in range(rounds):
        description, mutated = mutate_certificate(document, rng)
        try:
            certificate = load_certificate(mutated)
        except MalformedCertificate:
            malformed += 1
            continue
        if verify(oracle, certificate).accepted:
            accepted.append(description)
            logger.warning(f"Mutated certificate accepted: {description}")
    return {
        "rounds": rounds,
        "seed": seed,
        "rejected": rounds - len(accepted),
        "malformed": malformed,
        "accepted": accepted,
    }
