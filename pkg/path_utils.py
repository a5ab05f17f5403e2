import os

from config_params import RESULT_DIR

_MODULE_DIR = os.path.dirname(os.path.abspath(__file__))


def get_data_file_path(filename):
    """
    取得隨專案附帶的資料檔（例如 golden_corpus.csv）的絕對路徑
    無論從哪個目錄執行都能找到
    """
    if os.path.isabs(filename):
        return filename
    return os.path.join(_MODULE_DIR, filename)


def get_result_file_path(filename, result_dir=RESULT_DIR):
    """
    取得輸出檔案路徑

    絕對路徑與含目錄的相對路徑照原樣使用；單純檔名放進 result 目錄。
    """
    if os.path.isabs(filename) or os.path.dirname(filename):
        parent = os.path.dirname(os.path.abspath(filename))
        os.makedirs(parent, exist_ok=True)
        return filename

    target_dir = result_dir if os.path.isabs(result_dir) else os.path.join(os.getcwd(), result_dir)
    os.makedirs(target_dir, exist_ok=True)
    return os.path.join(target_dir, filename)
