class AllocationOrder {
    public static void main(String[] a) {
        System.out.println(new Maker().Run(3));
    }
}

class Maker {
    Node head;
    int[] buf;

    public int Run(int n) {
        int i;
        Node t;
        buf = new int[2];
        i = 0;
        while (i < n) {
            t = new Node();
            head = t.Link(head, i);
            i = i + 1;
        }
        buf = new int[5];
        t = new Leaf();
        return head.Count();
    }
}

class Node {
    Node next;
    int[] tag;
    boolean has_next;

    public Node Link(Node rest, int k) {
        next = rest;
        has_next = 0 < k;
        tag = new int[k + 1];
        return this;
    }

    public int Count() {
        int c;
        if (has_next) c = tag.length + next.Count();
        else c = tag.length;
        return c;
    }
}

class Leaf extends Node {
}
