from datetime import datetime

from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill, Alignment, Border, Side
from openpyxl.utils import get_column_letter

from utils import to_report_timezone

HEADER_BLUE = "0077BE"
NT_RED = "C1272D"

THIN = Border(
    left=Side(style='thin'),
    right=Side(style='thin'),
    top=Side(style='thin'),
    bottom=Side(style='thin')
)


def generate_bench_excel(report, generated_at=None):
    """
    Excel workbook for a bench report document (see bench.report_to_dict).

    Args:
        report: report dictionary with 'config' and 'rows'
        generated_at: naive UTC datetime for the header, defaults to now

    Returns:
        Workbook object ready to be saved
    """
    wb = Workbook()
    ws = wb.active
    ws.title = "Bench"

    # --- Header Section ---
    ws.merge_cells('A1:H1')
    header_cell = ws['A1']
    header_cell.value = "Linear loop termination benchmark"
    header_cell.font = Font(name='Arial', size=18, bold=True, color="FFFFFF")
    header_cell.fill = PatternFill(start_color=HEADER_BLUE, end_color=HEADER_BLUE, fill_type="solid")
    header_cell.alignment = Alignment(horizontal='center', vertical='center')
    ws.row_dimensions[1].height = 30

    ws.merge_cells('A2:H2')
    date_cell = ws['A2']
    stamp = to_report_timezone(generated_at or datetime.utcnow())
    date_cell.value = f"Generated {stamp.strftime('%Y-%m-%d %H:%M %Z')}"
    date_cell.font = Font(name='Arial', size=10, italic=True)
    date_cell.alignment = Alignment(horizontal='center')

    # --- Summary Section ---
    rows = report['rows']
    config = report['config']
    row = 4
    ws.merge_cells(f'A{row}:H{row}')
    ws[f'A{row}'] = "Summary"
    ws[f'A{row}'].font = Font(name='Arial', size=14, bold=True)
    row += 1

    summary_data = [
        ('Seed:', config['seed']),
        ('Entry magnitude:', config['entry_magnitude']),
        ('Loops:', sum(r['loops'] for r in rows)),
        ('Terminating:', sum(r['terminating'] for r in rows)),
        ('Nonterminating:', sum(r['nonterminating'] for r in rows)),
        ('Errors:', sum(r['errors'] for r in rows)),
        ('Audited:', report.get('audited', 0)),
    ]
    for label, value in summary_data:
        ws[f'A{row}'] = label
        ws[f'A{row}'].font = Font(name='Arial', size=11, bold=True)
        ws[f'B{row}'] = value
        ws[f'B{row}'].font = Font(name='Arial', size=11)
        row += 1

    row += 1

    # --- Table ---
    headers = ['Set', '#Loops', 'Dim', '#T', '#NT', 'CPU/s[T]', 'CPU/s[N]', 'CPU/s[total]']
    for col_num, header in enumerate(headers, 1):
        cell = ws.cell(row=row, column=col_num)
        cell.value = header
        cell.font = Font(name='Arial', size=11, bold=True, color="FFFFFF")
        cell.fill = PatternFill(start_color=HEADER_BLUE, end_color=HEADER_BLUE, fill_type="solid")
        cell.alignment = Alignment(horizontal='center', vertical='center')
        cell.border = THIN
    row += 1

    for r in rows:
        values = [r['set'], r['loops'], r['dimension'], r['terminating'], r['nonterminating'],
                  r['cpu_terminating'], r['cpu_nonterminating'], r['cpu_total']]
        for col_num, value in enumerate(values, 1):
            cell = ws.cell(row=row, column=col_num)
            cell.value = value
            cell.font = Font(name='Arial', size=10)
            cell.alignment = Alignment(horizontal='right')
            cell.border = THIN
            if col_num >= 6:
                cell.number_format = '0.000'
            if col_num == 5 and r['nonterminating'] > r['terminating']:
                cell.font = Font(name='Arial', size=10, bold=True, color=NT_RED)
            elif row % 2 == 0:
                cell.fill = PatternFill(start_color="F3F4F6", end_color="F3F4F6", fill_type="solid")
        row += 1

    for col_num, width in enumerate([8, 10, 8, 8, 8, 12, 12, 14], 1):
        ws.column_dimensions[get_column_letter(col_num)].width = width

    return wb
