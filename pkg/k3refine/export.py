import csv
import io
import json

import pandas as pd

FLAG_COLUMNS = ('palindromic', 'polynomial', 'integral')


def _param_columns(records):
    columns = []
    for record in records:
        for key in record.params:
            if key not in columns:
                columns.append(key)
    return columns


def _flag_text(value):
    return 'true' if value else 'false'


def records_to_json(records):
    """One JSON object per line, keys in the fixed record order."""
    return ''.join(json.dumps(record.to_dict()) + '\n' for record in records)


def records_to_csv(records):
    params = _param_columns(records)
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')

    # Write header
    writer.writerow(['invariant', *params, *FLAG_COLUMNS, 'result'])

    # Write data rows
    for record in records:
        writer.writerow([
            record.invariant,
            *(record.params.get(key, '') for key in params),
            *(_flag_text(record.flags[flag]) for flag in FLAG_COLUMNS),
            record.result_tokens(),
        ])
    return output.getvalue()


def records_to_table(records):
    params = _param_columns(records)
    rows = []
    for record in records:
        row = {'invariant': record.invariant}
        row.update({key: record.params.get(key, '') for key in params})
        row['result'] = str(record.result)
        row.update({flag: record.flags[flag] for flag in FLAG_COLUMNS})
        rows.append(row)
    if not rows:
        return ''
    return pd.DataFrame(rows).to_string(index=False) + '\n'


RENDERERS = {
    'json': records_to_json,
    'csv': records_to_csv,
    'pretty': records_to_table,
}


def render_records(records, output_format):
    try:
        renderer = RENDERERS[output_format]
    except KeyError:
        raise ValueError(f"Unknown output format '{output_format}'") from None
    return renderer(list(records))


def render_report(report, output_format):
    """Serialise a VerificationReport; csv and pretty both use the tabular layout."""
    if output_format == 'json':
        return json.dumps(report.to_dict()) + '\n'

    rows = [check.to_dict() for check in report.checks]
    if output_format == 'csv':
        output = io.StringIO()
        writer = csv.writer(output, lineterminator='\n')
        writer.writerow(['name', 'instances', 'passed', 'detail'])
        for row in rows:
            writer.writerow([row['name'], row['instances'], _flag_text(row['passed']), row['detail']])
        writer.writerow(['basis center', '', '', report.basis_center or ''])
        return output.getvalue()

    lines = []
    if rows:
        table = pd.DataFrame(rows, columns=['name', 'instances', 'passed', 'detail'])
        table['passed'] = table['passed'].map({True: 'PASS', False: 'FAIL'})
        lines.append(table.to_string(index=False))
    lines.append(f"basis center: {report.basis_center or 'unresolved'}")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return '\n'.join(lines) + '\n'
