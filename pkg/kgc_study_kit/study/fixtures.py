"""
The five-task fixture bundle over the employee / project / task universe.

Source data comes in two renderings (CSV and JSON). Projects reference their
manager and tasks reference their project and assignee by ID, so mapping
T3 and T5 requires joining the sources. Expected graphs:

  T1  ex:Employee instances with first and last name        3 per employee
  T2  ex:Project instances with name, start and end date     4 per project
  T3  ex:managedBy from projects to employees                 1 per project
  T4  ex:Task instances with an English and a Dutch description  3 per task
  T5  ex:of and ex:assignedTo from tasks                      2 per task
"""

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional
from urllib.parse import quote

from kgc_study_kit.output_json import FIXTURES_FORMAT_VERSION, KIT_VERSION, text_digest
from kgc_study_kit.rdf.ntriples import serialize_ntriples
from kgc_study_kit.rdf.terms import RDF_TYPE, XSD_DATE, Iri, Literal, RdfGraph, RdfTriple
from kgc_study_kit.storage.storage import ArtifactStore
from kgc_study_kit.study.dataset import CORE_TASKS, NamingPolicy
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

EMPLOYEES = [
    {"employee_id": "e01", "first_name": "Ada", "last_name": "Peeters"},
    {"employee_id": "e02", "first_name": "Bram", "last_name": "Janssens"},
    {"employee_id": "e03", "first_name": "Chloé", "last_name": "Dubois"},
    {"employee_id": "e04", "first_name": "Daan", "last_name": "van Dijk"},
    {"employee_id": "e05", "first_name": "Eva", "last_name": "Maes"},
    {"employee_id": "e06", "first_name": "Femke", "last_name": "De Smet"},
    {"employee_id": "e07", "first_name": "Gert", "last_name": "Willems"},
    {"employee_id": "e08", "first_name": "Hanne", "last_name": "Claes"},
]

PROJECTS = [
    {"project_id": "p01", "project_name": "Data Portal", "start_date": "2023-01-09",
     "end_date": "2023-06-30", "manager_id": "e01"},
    {"project_id": "p02", "project_name": "Mapping Migration", "start_date": "2023-03-01",
     "end_date": "2023-12-15", "manager_id": "e04"},
    {"project_id": "p03", "project_name": "Ontology Review", "start_date": "2023-09-04",
     "end_date": "2024-02-29", "manager_id": "e03"},
    {"project_id": "p04", "project_name": "Sensor Pipeline", "start_date": "2024-01-15",
     "end_date": "2024-07-31", "manager_id": "e06"},
    {"project_id": "p05", "project_name": "Library Linked Data", "start_date": "2024-04-02",
     "end_date": "2024-11-29", "manager_id": "e01"},
]

TASKS = [
    {"task_id": "t01", "project_id": "p01", "assignee_id": "e02",
     "description_en": "Design the landing page", "description_nl": "Ontwerp de startpagina"},
    {"task_id": "t02", "project_id": "p01", "assignee_id": "e05",
     "description_en": "Write the search API", "description_nl": "Schrijf de zoek-API"},
    {"task_id": "t03", "project_id": "p02", "assignee_id": "e07",
     "description_en": "Inventory the legacy mappings", "description_nl": "Inventariseer de oude mappings"},
    {"task_id": "t04", "project_id": "p02", "assignee_id": "e02",
     "description_en": "Port mappings to the new engine", "description_nl": "Zet mappings om naar de nieuwe engine"},
    {"task_id": "t05", "project_id": "p02", "assignee_id": "e08",
     "description_en": "Compare old and new output", "description_nl": "Vergelijk oude en nieuwe uitvoer"},
    {"task_id": "t06", "project_id": "p03", "assignee_id": "e05",
     "description_en": "Collect competency questions", "description_nl": "Verzamel competentievragen"},
    {"task_id": "t07", "project_id": "p03", "assignee_id": "e03",
     "description_en": "Align classes with upper ontology", "description_nl": "Lijn klassen uit met de bovenontologie"},
    {"task_id": "t08", "project_id": "p04", "assignee_id": "e07",
     "description_en": "Configure the message broker", "description_nl": "Configureer de berichtenbroker"},
    {"task_id": "t09", "project_id": "p04", "assignee_id": "e06",
     "description_en": "Annotate sensor streams", "description_nl": "Annoteer de sensorstromen"},
    {"task_id": "t10", "project_id": "p05", "assignee_id": "e08",
     "description_en": "Convert the catalogue records", "description_nl": "Converteer de catalogusrecords"},
    {"task_id": "t11", "project_id": "p05", "assignee_id": "e04",
     "description_en": "Link authors to external authorities", "description_nl": "Koppel auteurs aan externe autoriteiten"},
    {"task_id": "t12", "project_id": "p05", "assignee_id": "e02",
     "description_en": "Publish the dataset", "description_nl": "Publiceer de dataset"},
]

TASK_DESCRIPTIONS = {
    "T1": "Generate instances of ex:Employee with their first and last names; IRIs are based on the name.",
    "T2": "Generate instances of ex:Project with their name, start and end date (xsd:date); IRIs are based on the project ID.",
    "T3": "Generate ex:managedBy properties from projects to employees.",
    "T4": "Generate instances of ex:Task with their descriptions in English and Dutch; IRIs are based on the task ID.",
    "T5": "Generate ex:of and ex:assignedTo properties from tasks to, respectively, projects and employees.",
}

TASK_SOURCES = {
    "T1": ("employees",),
    "T2": ("projects",),
    "T3": ("projects", "employees"),
    "T4": ("tasks",),
    "T5": ("tasks", "projects", "employees"),
}


@dataclass(frozen=True)
class TaskFixture:
    task_id: str
    description: str
    source_data_paths: tuple
    expected_graph_path: str


def employee_slug(first_name: str, last_name: str) -> str:
    """Lower-cased `first-last`, percent-encoded (UTF-8)."""
    return quote(f"{first_name}-{last_name}".lower(), safe="-")


class _Minter:
    def __init__(self, policy: NamingPolicy):
        self.policy = policy
        self.employees = {e["employee_id"]: e for e in EMPLOYEES}

    def vocab(self, local: str) -> Iri:
        return Iri(self.policy.base + local)

    def employee(self, employee_id: str) -> Iri:
        e = self.employees[employee_id]
        slug = employee_slug(e["first_name"], e["last_name"])
        return Iri(self.policy.base + self.policy.employee_template.format(slug=slug, id=employee_id))

    def project(self, project_id: str) -> Iri:
        return Iri(self.policy.base + self.policy.project_template.format(id=project_id))

    def task(self, task_id: str) -> Iri:
        return Iri(self.policy.base + self.policy.task_template.format(id=task_id))


def expected_graphs(naming_policy: Optional[NamingPolicy] = None) -> dict:
    """Build the five expected graphs in memory, keyed T1..T5."""
    m = _Minter(naming_policy or NamingPolicy())
    ex = m.vocab

    t1 = []
    for e in EMPLOYEES:
        s = m.employee(e["employee_id"])
        t1 += [
            RdfTriple(s, RDF_TYPE, ex("Employee")),
            RdfTriple(s, ex("firstName"), Literal(e["first_name"])),
            RdfTriple(s, ex("lastName"), Literal(e["last_name"])),
        ]

    t2, t3 = [], []
    for p in PROJECTS:
        s = m.project(p["project_id"])
        t2 += [
            RdfTriple(s, RDF_TYPE, ex("Project")),
            RdfTriple(s, ex("name"), Literal(p["project_name"])),
            RdfTriple(s, ex("startDate"), Literal(p["start_date"], datatype=XSD_DATE)),
            RdfTriple(s, ex("endDate"), Literal(p["end_date"], datatype=XSD_DATE)),
        ]
        t3.append(RdfTriple(s, ex("managedBy"), m.employee(p["manager_id"])))

    t4, t5 = [], []
    for t in TASKS:
        s = m.task(t["task_id"])
        t4 += [
            RdfTriple(s, RDF_TYPE, ex("Task")),
            RdfTriple(s, ex("description"), Literal(t["description_en"], language="en")),
            RdfTriple(s, ex("description"), Literal(t["description_nl"], language="nl")),
        ]
        t5 += [
            RdfTriple(s, ex("of"), m.project(t["project_id"])),
            RdfTriple(s, ex("assignedTo"), m.employee(t["assignee_id"])),
        ]

    return {tid: RdfGraph(triples) for tid, triples in zip(CORE_TASKS, (t1, t2, t3, t4, t5))}


def source_tables() -> dict:
    return {"employees": EMPLOYEES, "projects": PROJECTS, "tasks": TASKS}


def _csv_text(rows: list[dict]) -> str:
    out = io.StringIO(newline="")
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def build_fixture_bundle(out_dir, naming_policy: Optional[NamingPolicy] = None, store: Optional[ArtifactStore] = None) -> list:
    """
    Write the sample source data, the five expected graphs and a
    fixtures.json manifest under `out_dir`.

    Layout:
        data/<table>.csv, data/<table>.json
        expected/T1.nt .. expected/T5.nt
        fixtures.json
    """
    policy = naming_policy or NamingPolicy()
    store = store or ArtifactStore(out_dir)

    for name, rows in source_tables().items():
        store.save_text(f"data/{name}.csv", _csv_text(rows))
        store.save_text(f"data/{name}.json", json.dumps(rows, ensure_ascii=False, indent=2) + "\n")

    fixtures = []
    manifest_tasks = []
    for task_id, graph in expected_graphs(policy).items():
        text = serialize_ntriples(graph)
        graph_path = f"expected/{task_id}.nt"
        store.save_text(graph_path, text)
        sources = tuple(f"data/{name}.{ext}" for name in TASK_SOURCES[task_id] for ext in ("csv", "json"))
        fixtures.append(TaskFixture(task_id, TASK_DESCRIPTIONS[task_id], sources, graph_path))
        manifest_tasks.append({
            "taskId": task_id,
            "description": TASK_DESCRIPTIONS[task_id],
            "sourceData": list(sources),
            "expectedGraph": graph_path,
            "tripleCount": len(graph),
            "digest": text_digest(text),
        })

    store.save_json("fixtures.json", {
        "formatVersion": FIXTURES_FORMAT_VERSION,
        "kitVersion": KIT_VERSION,
        "namingPolicy": policy.as_dict(),
        "tasks": manifest_tasks,
    })
    logger.info(f"Wrote fixture bundle ({len(fixtures)} tasks) to {store.base_path}")
    return fixtures
