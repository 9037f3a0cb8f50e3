from emit.common import write_table

JSON_TEMPLATE = "sweep.json.j2"


def generate_json(path, table, template=JSON_TEMPLATE):
    write_table(path, table, template)
