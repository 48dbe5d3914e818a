import json

import numpy as np
import pandas as pd
import pytest

from config.settings import FORMAT_VERSION, ROW_COLUMNS
from utils.export import (
    ExportError, config_hash, provenance, read_jsonl, records_to_dataframe, save_csv,
    write_document, write_jsonl, write_run_meta,
)


class TestProvenance:

    def test_hash_ignores_key_order(self):
        assert config_hash({'a': 1, 'b': [1, 2]}) == config_hash({'b': [1, 2], 'a': 1})
        assert config_hash({'a': 1}) != config_hash({'a': 2})

    def test_fields(self):
        record = provenance('simulate', {'time': 1.0})
        assert record['format_version'] == FORMAT_VERSION
        assert record['command'] == 'simulate'
        assert len(record['config_hash']) == 64
        assert 'wall_clock' not in record


class TestTables:

    def test_positions_become_text(self):
        df = records_to_dataframe([{'replica': 0, 'seed': 1, 'time': 2.0, 'row': 3,
                                    'positions': [4, 0], 'format_version': 1}], ROW_COLUMNS)
        assert list(df.columns) == ROW_COLUMNS
        assert df.loc[0, 'positions'] == '4 0'

    def test_empty(self):
        df = records_to_dataframe([], ROW_COLUMNS)
        assert df.empty
        assert list(df.columns) == ROW_COLUMNS

    def test_save_csv(self, tmp_path):
        path = save_csv(pd.DataFrame({'x': [1, 2]}), tmp_path / 'nested' / 'out.csv')
        assert pd.read_csv(path)['x'].tolist() == [1, 2]


class TestJson:

    def test_jsonl_round_trip_is_canonical(self, tmp_path):
        records = [{'b': np.int64(2), 'a': np.array([1.5, 2.5])}, {'c': (1, 2)}]
        assert write_jsonl(records, tmp_path / 'out.jsonl') == 2
        lines = (tmp_path / 'out.jsonl').read_text(encoding='utf-8').splitlines()
        assert lines[0] == '{"a":[1.5,2.5],"b":2}'
        assert list(read_jsonl(tmp_path / 'out.jsonl')) == [{'a': [1.5, 2.5], 'b': 2}, {'c': [1, 2]}]

    def test_document_and_meta(self, tmp_path):
        path = write_document({'matrix': np.eye(2)}, tmp_path / 'kernel.json')
        assert json.loads(open(path, encoding='utf-8').read())['matrix'] == [[1.0, 0.0], [0.0, 1.0]]
        meta = write_run_meta(path, 1.23456)
        assert meta.endswith('kernel.json.meta.json')
        assert json.loads(open(meta, encoding='utf-8').read())['wall_clock_seconds'] == 1.235

    def test_unserializable(self, tmp_path):
        with pytest.raises(TypeError):
            write_document({'x': object()}, tmp_path / 'bad.json')

    def test_unwritable_path(self, tmp_path):
        blocker = tmp_path / 'file'
        blocker.write_text('x')
        with pytest.raises(ExportError) as excinfo:
            write_jsonl([{'a': 1}], blocker / 'out.jsonl')
        assert 'file' in excinfo.value.path

    def test_missing_file(self, tmp_path):
        with pytest.raises(ExportError):
            list(read_jsonl(tmp_path / 'missing.jsonl'))
