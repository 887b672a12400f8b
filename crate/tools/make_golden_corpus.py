#!/usr/bin/env python3
"""Write the synthetic 50-comment golden corpus (JSONL + CSV) and its manifest.

The comments are fixed strings; the manifest records the record count and the
SHA-256 of the ids joined with newlines, which the loader tests check against.
"""
import csv
import hashlib
import json
import os
import sys

GROUPS = ["Atlantic City Locals", "Ocean City Community", "Wildwood Neighbors", "Cape May Residents"]

TEXTS = [
    "Offshore wind turbines are killing whales!!",
    "Renewable energy sources maybe a bit expensive but are much healthier",
    "I do not like offshore wind energy, it's boring!",
    "Offshore wind energy costs us 10% more than our current usage which we cannot afford due to our profits being 20% lower this year",
    "Clean energy jobs for the shore are a GREAT opportunity for our towns",
    "The turbines will ruin the view from every beach. Terrible idea.",
    "Not good for the fisheries and not good for tourism",
    "Check the project map https://example.org/windmap #offshorewind #NJ",
    "Wind farms are a wonderful step toward a sustainable future",
    "This is a scam paid for by our taxes and electric bills",
    "I love the idea of clean power off our coast, very exciting!!!",
    "Who pays when the turbines break down? Nobody has a plan.",
    None,
    "Ok!!",
    "The and a",
    "The survey vessels were out again this morning near the inlet",
    "Dead whales keep washing up and nobody wants to investigate, it is a disaster",
    "Great news for the state, more jobs and cleaner air",
    "Honestly the birds are in danger from those huge blades",
    "Offshore wind is the future; fossil fuels are the past #cleanenergy",
    "These projects are expensive, noisy and dangerous for wildlife",
    "My family supports the wind farm, it is a smart investment",
    "The meeting is on Tuesday at 7pm in the municipal building",
    "What an estimable effort by the engineers working on the turbines",
    "I hate how they rushed this through without asking residents",
    "Electricity rates will go up, that is a fact not an opinion",
    "Really happy to see progress on renewable power in New Jersey",
    "The ocean is not a factory. Stop industrializing our coast!!",
    "Turbines at ACUA have run for years without any problem",
    "Sad to see people fight against clean energy with fake facts",
    "Foreign companies profit while local fishermen lose everything",
    "Solar and wind together can make the grid reliable and efficient",
    "So much misinformation about whales, the scientists are clear",
    "NOT HAPPY about the ugly view from my porch",
    "Please read the environmental impact statement before commenting www.example.gov/eis",
    "Wind power is the best option we have, period",
    "Horrible for property values and horrible for the fishing industry",
    "The lease area is about 15 miles from the coast",
    "I am worried about the cost but I support the goal",
    "Beautiful sunrise over the turbines this morning",
    "Protect our coast, stop the wind farms #ProtectOurCoast",
    "They never explain who benefits from these subsidies",
    "Interesting discussion at the council, many good points on both sides",
    "Cables will run under the beach to a substation inland",
    "What a waste of money, a total failure of planning",
    "The wind energy area will create hundreds of construction jobs",
    "Stupid idea, the turbines are an eyesore and a threat to the whales",
    "Thank you for sharing, this is really helpful information",
    "Construction starts next spring according to the developer",
    "Love it! Clean, renewable, and good for the economy!!",
]

def main(outdir):
    assert len(TEXTS) == 50
    os.makedirs(outdir, exist_ok=True)
    records = []
    for i, text in enumerate(TEXTS, start=1):
        rec = {"id": f"g{i:02d}", "text": text}
        if i % 3 != 0:
            rec["source_group"] = GROUPS[i % len(GROUPS)]
        if i % 4 == 1:
            rec["timestamp"] = f"2023-{(i % 12) + 1:02d}-{(i % 27) + 1:02d}T12:00:00Z"
        records.append(rec)

    with open(os.path.join(outdir, "corpus.jsonl"), "w", encoding="utf-8", newline="\n") as f:
        for rec in records:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")

    with open(os.path.join(outdir, "corpus.csv"), "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "text", "source_group", "timestamp"])
        for rec in records:
            w.writerow([rec["id"], rec["text"] or "", rec.get("source_group", ""), rec.get("timestamp", "")])

    ids = "\n".join(r["id"] for r in records)
    manifest = {
        "record_count": len(records),
        "id_checksum_sha256": hashlib.sha256(ids.encode("utf-8")).hexdigest(),
    }
    with open(os.path.join(outdir, "corpus_manifest.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")

if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/golden")
