from emit.common import write_table

CSV_TEMPLATE = "sweep.csv.j2"


def generate_csv(path, table, template=CSV_TEMPLATE):
    write_table(path, table, template)
