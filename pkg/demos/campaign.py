"""
A seeded campaign
=================

Instances cycle through five functions, three weights and three sizes. Each
one runs every checker whose hypotheses it satisfies; the rest are skipped.
The same seeds give byte-identical reports.
"""

import json

from opineq import emit_report, run_campaign
from opineq.harness import campaign_specs

report = run_campaign(campaign_specs(60), workers=4)
data = json.loads(emit_report(report, "json"))
for tid, st in data["theorems"].items():
    print(f"{tid:18} {st['passes']:3}/{st['instances']:<3} skipped={st['skipped']:<3} "
          f"worst margin={st['worst_margin']:+.2e}  median tightness={st['tightness']['median']}")
print("failures:", data["failures"])
print()
print(emit_report(report, "csv"))
